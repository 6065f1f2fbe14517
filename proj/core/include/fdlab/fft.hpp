#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace fdlab::fft {

using cplx = std::complex<double>;

/// Unnormalized forward DFT: out[k] = sum_j in[j] exp(-2 pi i jk / N).
/// `in` and `out` may alias. Thread-safe.
void forward(std::span<const cplx> in, std::span<cplx> out);

/// Normalized inverse DFT (divides by N). `in` and `out` may alias.
void inverse(std::span<const cplx> in, std::span<cplx> out);

}  // namespace fdlab::fft
