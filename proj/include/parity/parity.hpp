#pragma once

#include "arcs.hpp"
#include "bits.hpp"
#include "catalog.hpp"
#include "circuits.hpp"
#include "corpus.hpp"
#include "errors.hpp"
#include "gf2.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "isomorphism.hpp"
#include "menger.hpp"
#include "pfaffian.hpp"
#include "scanner.hpp"
#include "solver.hpp"
#include "transforms.hpp"
