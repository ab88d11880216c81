#pragma once

// Scale-invariant spectral entropy of log-binned distance distributions.

#include "baseline.hpp"
#include "binning.hpp"
#include "cramer.hpp"
#include "distances.hpp"
#include "entropy.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "io.hpp"
#include "nullmodel.hpp"
#include "parallel.hpp"
#include "primes.hpp"
#include "random.hpp"
#include "spectrum.hpp"
#include "stats.hpp"
#include "version.hpp"
