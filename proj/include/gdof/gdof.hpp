#pragma once

#include "gdof/errors.hpp"
#include "gdof/rational.hpp"
#include "gdof/random.hpp"
#include "gdof/network.hpp"
#include "gdof/cycles.hpp"
#include "gdof/polyhedra.hpp"
#include "gdof/polymatroid.hpp"
#include "gdof/regions.hpp"
#include "gdof/power.hpp"
#include "gdof/io.hpp"
#include "gdof/extremal.hpp"
#include "gdof/acceptance.hpp"
#include "gdof/cli.hpp"
