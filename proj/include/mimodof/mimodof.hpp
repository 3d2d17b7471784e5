/** Umbrella header. */
#pragma once

#include "mimodof/bounds.hpp"
#include "mimodof/channel.hpp"
#include "mimodof/matrix.hpp"
#include "mimodof/numerics.hpp"
#include "mimodof/rational.hpp"
#include "mimodof/rng.hpp"
#include "mimodof/simulate.hpp"
#include "mimodof/transform.hpp"
