#pragma once

// Everything except the HTTP layer, which needs cpp-httplib and threads.

#include "algorithms.hpp"
#include "characterize.hpp"
#include "enumerate.hpp"
#include "game.hpp"
#include "graph.hpp"
#include "graph_io.hpp"
#include "reduction.hpp"
#include "service.hpp"
#include "solver.hpp"
#include "strategies.hpp"
#include "trace.hpp"
