#pragma once

// Entropy-constrained quantization of binary-input channel outputs:
// globally optimal quantizers under min beta*H(X|Z) + H(Z) via dynamic
// programming over contiguous partitions in sorted-posterior order.

#include "ecq/channel.hpp"
#include "ecq/channel_io.hpp"
#include "ecq/continuous.hpp"
#include "ecq/cost.hpp"
#include "ecq/dp.hpp"
#include "ecq/errors.hpp"
#include "ecq/oracle.hpp"
#include "ecq/quantizer.hpp"
#include "ecq/rng.hpp"
#include "ecq/run.hpp"
