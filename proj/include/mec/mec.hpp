#pragma once

#include "alternating.hpp"
#include "coloring.hpp"
#include "decomposition.hpp"
#include "driver.hpp"
#include "enumerate.hpp"
#include "experiment.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "labeling.hpp"
#include "matching_engine.hpp"
#include "oracle.hpp"
#include "precolor.hpp"
#include "rng.hpp"
#include "tutte.hpp"
#include "vizing.hpp"
