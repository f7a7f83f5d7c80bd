#pragma once

#include "ballcover/arcs.hpp"
#include "ballcover/counterexample.hpp"
#include "ballcover/harness.hpp"
#include "ballcover/io.hpp"
#include "ballcover/maximal1d.hpp"
#include "ballcover/measure.hpp"
#include "ballcover/montecarlo.hpp"
#include "ballcover/parallel.hpp"
#include "ballcover/selection.hpp"
#include "ballcover/types.hpp"
#include "ballcover/union1d.hpp"
