#pragma once

#include "critcount/arrangement.hpp"
#include "critcount/chern.hpp"
#include "critcount/critical_solver.hpp"
#include "critcount/homotopy.hpp"
#include "critcount/master_function.hpp"
#include "critcount/morse.hpp"
#include "critcount/polynomial.hpp"
#include "critcount/rational.hpp"
#include "critcount/report.hpp"
#include "critcount/scenario.hpp"
