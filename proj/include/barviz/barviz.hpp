#pragma once

#include "barviz/errors.hpp"
#include "barviz/graph.hpp"
#include "barviz/graph_io.hpp"
#include "barviz/planarity.hpp"
#include "barviz/bars.hpp"
#include "barviz/visibility.hpp"
#include "barviz/split.hpp"
#include "barviz/transfer.hpp"
#include "barviz/layout.hpp"
#include "barviz/svg.hpp"
