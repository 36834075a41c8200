#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "dspca/rng.hpp"
#include "dspca/types.hpp"

namespace testutil {

inline dspca::SymmetricMatrix random_sym(std::size_t n, dspca::Rng& rng,
                                         double lo = -1.0, double hi = 1.0) {
    dspca::SymmetricMatrix S(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            S.set(i, j, rng.uniform(lo, hi));
        }
    }
    return S;
}

inline dspca::SymmetricMatrix diag(const std::vector<double>& d) {
    dspca::SymmetricMatrix S(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        S.set(i, i, d[i]);
    }
    return S;
}

inline double max_abs_diff(const dspca::SymmetricMatrix& a,
                           const dspca::SymmetricMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim() * a.dim(); ++i) {
        m = std::max(m, std::fabs(a.data()[i] - b.data()[i]));
    }
    return m;
}

inline double rel_fro_diff(const dspca::SymmetricMatrix& a,
                           const dspca::SymmetricMatrix& b) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < a.dim() * a.dim(); ++i) {
        const double d = a.data()[i] - b.data()[i];
        num += d * d;
        den += b.data()[i] * b.data()[i];
    }
    return std::sqrt(num / den);
}

inline std::vector<double> random_unit(std::size_t n, dspca::Rng& rng) {
    std::vector<double> v(n);
    double nrm = 0.0;
    for (double& vi : v) {
        vi = rng.normal();
        nrm += vi * vi;
    }
    nrm = std::sqrt(nrm);
    for (double& vi : v) {
        vi /= nrm;
    }
    return v;
}

} // namespace testutil
