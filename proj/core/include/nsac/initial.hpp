#pragma once

#include <cstdint>

#include "nsac/config.hpp"
#include "nsac/state.hpp"

namespace nsac {

/// Smallness measure of a perturbation:
/// ||(sigma,u)||_{H^3} + ||grad phi||_{H^2} + ||phi^2 - 1||.
double perturbation_size(const State& state);

/// Zero-mean real field with random Fourier coefficients on |m_axis| <= max_mode.
/// Bit-reproducible for a given generator state.
RealField random_band_limited(const Grid& grid, int max_mode, std::uint64_t& rng_state);

/// Initial state for cfg.ic. Throws ConfigError for infeasible specs
/// (density window or |phi| <= 1 cannot hold at the requested size).
State make_initial(const RunConfig& cfg);

}  // namespace nsac
