#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace al {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using CVec = std::vector<cplx>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx I{0.0, 1.0};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A discrete eigenvalue in |lambda| > 1 with its order and the Taylor data
// of the connection coefficient: betas[k] is the k-th derivative at lambda.
struct Pole {
    cplx lambda;
    int order = 1;
    CVec betas;
};

struct DiscreteSpectrum {
    std::vector<Pole> poles;
    bool empty() const { return poles.empty(); }
    int total_order() const {
        int s = 0;
        for (const auto& p : poles) s += p.order;
        return s;
    }
};

}  // namespace al
