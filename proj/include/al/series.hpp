#pragma once

#include "al/types.hpp"

// Truncated Taylor series: s[k] is the coefficient of (lambda - lambda0)^k.
namespace al::series {

using Series = CVec;

Series constant(cplx c, size_t n);
// Series of (lambda - c) about lambda0.
Series linear(cplx lambda0, cplx c, size_t n);
Series add(const Series& a, const Series& b);
Series scale(const Series& a, cplx c);
Series mul(const Series& a, const Series& b, size_t n);
Series recip(const Series& a, size_t n);
Series pow(const Series& a, int p, size_t n);
// exp(a) for a series with a[0] = 0.
Series exp0(const Series& a, size_t n);
// Drops the first k coefficients (division by (lambda - lambda0)^k).
Series shift_down(const Series& a, size_t k);
// Series of 1/lambda about lambda0.
Series inverse_variable(cplx lambda0, size_t n);
// p(w) with p given by coefficients about w0, composed with a series w(lambda) with w[0] = w0.
Series compose(const Series& p, const Series& w, size_t n);
// Coefficientwise complex conjugate (the series of conj(f(conj lambda)) about conj lambda0).
Series conj(const Series& a);
cplx eval(const Series& a, cplx h);

}  // namespace al::series
