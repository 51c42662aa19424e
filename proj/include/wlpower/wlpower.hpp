#pragma once

#include "wlpower/cache.hpp"
#include "wlpower/canonical.hpp"
#include "wlpower/cli.hpp"
#include "wlpower/cops_robber.hpp"
#include "wlpower/ef_game.hpp"
#include "wlpower/enumerate.hpp"
#include "wlpower/errors.hpp"
#include "wlpower/game_common.hpp"
#include "wlpower/gfwl.hpp"
#include "wlpower/graph.hpp"
#include "wlpower/homomorphism.hpp"
#include "wlpower/io.hpp"
#include "wlpower/iso_type.hpp"
#include "wlpower/matching.hpp"
#include "wlpower/power.hpp"
#include "wlpower/selectors.hpp"
#include "wlpower/treewidth.hpp"
