#include "al/series.hpp"

namespace al::series {

Series constant(cplx c, size_t n) {
    Series s(n, cplx{});
    if (n) s[0] = c;
    return s;
}

Series linear(cplx lambda0, cplx c, size_t n) {
    Series s(n, cplx{});
    if (n > 0) s[0] = lambda0 - c;
    if (n > 1) s[1] = 1.0;
    return s;
}

Series add(const Series& a, const Series& b) {
    Series s(std::max(a.size(), b.size()), cplx{});
    for (size_t i = 0; i < a.size(); ++i) s[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) s[i] += b[i];
    return s;
}

Series scale(const Series& a, cplx c) {
    Series s = a;
    for (auto& x : s) x *= c;
    return s;
}

Series mul(const Series& a, const Series& b, size_t n) {
    Series s(n, cplx{});
    for (size_t i = 0; i < std::min(a.size(), n); ++i)
        for (size_t j = 0; j < b.size() && i + j < n; ++j) s[i + j] += a[i] * b[j];
    return s;
}

Series recip(const Series& a, size_t n) {
    if (a.empty() || a[0] == cplx{}) throw DomainError("series reciprocal needs a nonzero constant term");
    Series s(n, cplx{});
    if (!n) return s;
    s[0] = 1.0 / a[0];
    for (size_t k = 1; k < n; ++k) {
        cplx acc{};
        for (size_t j = 1; j <= k && j < a.size(); ++j) acc += a[j] * s[k - j];
        s[k] = -acc * s[0];
    }
    return s;
}

Series pow(const Series& a, int p, size_t n) {
    if (p < 0) return pow(recip(a, n), -p, n);
    Series r = constant(1.0, n);
    for (int i = 0; i < p; ++i) r = mul(r, a, n);
    return r;
}

Series exp0(const Series& a, size_t n) {
    Series e(n, cplx{});
    if (!n) return e;
    e[0] = 1.0;
    for (size_t k = 1; k < n; ++k) {
        cplx acc{};
        for (size_t j = 1; j <= k && j < a.size(); ++j) acc += static_cast<double>(j) * a[j] * e[k - j];
        e[k] = acc / static_cast<double>(k);
    }
    return e;
}

Series shift_down(const Series& a, size_t k) {
    if (k >= a.size()) return {};
    return Series(a.begin() + static_cast<long>(k), a.end());
}

Series inverse_variable(cplx lambda0, size_t n) {
    Series s(n);
    cplx p = 1.0 / lambda0;
    for (size_t k = 0; k < n; ++k) {
        s[k] = p;
        p *= -1.0 / lambda0;
    }
    return s;
}

Series compose(const Series& p, const Series& w, size_t n) {
    Series dw = w;
    if (!dw.empty()) dw[0] = 0.0;
    Series r = constant(p.empty() ? cplx{} : p.back(), n);
    for (size_t i = p.size(); i-- > 1;) r = add(mul(r, dw, n), constant(p[i - 1], n));
    r.resize(n);
    return r;
}

Series conj(const Series& a) {
    Series s = a;
    for (auto& x : s) x = std::conj(x);
    return s;
}

cplx eval(const Series& a, cplx h) {
    cplx r{};
    for (size_t i = a.size(); i-- > 0;) r = r * h + a[i];
    return r;
}

}  // namespace al::series
