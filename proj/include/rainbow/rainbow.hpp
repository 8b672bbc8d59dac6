#pragma once

// Everything at once.

#include "rainbow/signature.hpp"
#include "rainbow/atom_set.hpp"
#include "rainbow/coloured_graph.hpp"
#include "rainbow/atom_structure.hpp"
#include "rainbow/complex_algebra.hpp"
#include "rainbow/networks.hpp"
#include "rainbow/game_moves.hpp"
#include "rainbow/solver.hpp"
#include "rainbow/script.hpp"
#include "rainbow/blowup.hpp"
#include "rainbow/json_io.hpp"
#include "rainbow/play.hpp"
#include "rainbow/dot.hpp"
