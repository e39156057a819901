#pragma once

#include "mimdp/cut_mim.hpp"
#include "mimdp/decomposition.hpp"
#include "mimdp/equivalence.hpp"
#include "mimdp/error.hpp"
#include "mimdp/generators.hpp"
#include "mimdp/graph.hpp"
#include "mimdp/oracle.hpp"
#include "mimdp/problem.hpp"
#include "mimdp/set_spec.hpp"
#include "mimdp/solver.hpp"
#include "mimdp/vertex_set.hpp"
