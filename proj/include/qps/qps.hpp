#pragma once

// Umbrella header for the finite-dimensional phase space toolkit.

#include "qps/root_phase.hpp"
#include "qps/dense_operator.hpp"
#include "qps/phased_permutation.hpp"
#include "qps/schwinger_pair.hpp"
#include "qps/operator_basis.hpp"
#include "qps/factorization.hpp"
#include "qps/q_oscillator.hpp"
