// support.hpp
// Conversions between library types and oracle matrices.

#pragma once

#include "naqi/frames.hpp"
#include "naqi/qmat.hpp"
#include "oracles.hpp"

namespace testsupport {

inline oracle::Mat to_oracle(const naqi::ComplexMatrix& m) {
    oracle::Mat out(m.dim());
    for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = 0; c < m.dim(); ++c) out(r, c) = m(r, c);
    return out;
}

inline naqi::ComplexMatrix from_oracle(const oracle::Mat& m) {
    naqi::ComplexMatrix out(m.n);
    for (std::size_t r = 0; r < m.n; ++r)
        for (std::size_t c = 0; c < m.n; ++c) out(r, c) = m(r, c);
    return out;
}

inline double max_diff(const oracle::Mat& a, const oracle::Mat& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.a.size(); ++i) d = std::max(d, std::abs(a.a[i] - b.a[i]));
    return d;
}

inline oracle::Mat basis_of(const naqi::OrthonormalBasis& b) { return oracle::basis_matrix(b[0], b[1]); }

inline naqi::DensityMatrix random_state(std::size_t dim, std::mt19937_64& rng) {
    return naqi::DensityMatrix(from_oracle(oracle::random_mixed(dim, rng)));
}

}  // namespace testsupport
