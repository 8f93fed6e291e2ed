#pragma once

#include "algebra.hpp"

namespace mtc {

namespace detail {

using Wide = unsigned __int128;

inline std::vector<std::uint64_t> mul_mod_q(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                            std::size_t n, std::uint64_t q)
{
    std::vector<std::uint64_t> c(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            std::uint64_t x = a[i * n + k];
            if (!x) continue;
            for (std::size_t j = 0; j < n; ++j)
                c[i * n + j] = static_cast<std::uint64_t>((Wide{c[i * n + j]} + Wide{x} * b[k * n + j]) % q);
        }
    return c;
}

/// Trace of (integer lift of x)^e modulo q.
inline std::uint64_t lifted_trace_power(const FpMatrix& x, std::uint64_t e, std::uint64_t q)
{
    const std::size_t n = x.rows();
    std::vector<std::uint64_t> base(x.data().begin(), x.data().end());
    std::vector<std::uint64_t> acc(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) acc[i * n + i] = 1 % q;
    while (e) {
        if (e & 1) acc = mul_mod_q(acc, base, n, q);
        e >>= 1;
        if (e) base = mul_mod_q(base, base, n, q);
    }
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < n; ++i) t = (t + acc[i * n + i]) % q;
    return t;
}

} // namespace detail

/// Jacobson radical by iterated kernels of the modified trace forms valid in characteristic p.
///
/// I_{-1} = A and I_i = { x in I_{i-1} : g_i(x b) = 0 for all b }, where g_i(y) is the trace of
/// the p^i-th power of an integer lift of left multiplication by y, divided by p^i, mod p. The
/// radical is I_l with l = floor(log_p dim A). Returns basis columns; no post-hoc checks.
inline FpMatrix trace_form_radical(const Algebra& a)
{
    const std::size_t n = a.dim();
    const Scalar p = a.modulus();
    FpMatrix u = FpMatrix::identity(n, p);
    if (n == 0) return u;
    std::size_t l = 0;
    for (std::uint64_t pl = p; pl <= n; pl *= p) ++l;
    std::vector<Scalar> basis_trace(n);
    for (std::size_t m = 0; m < n; ++m) basis_trace[m] = a.left_mult(m).trace();
    std::uint64_t pi = 1;
    for (std::size_t i = 0; i <= l; ++i, pi *= p) {
        const std::size_t k = u.cols();
        if (k == 0) break;
        const std::uint64_t q = pi * p;
        FpMatrix g(n, k, p);
        for (std::size_t c = 0; c < k; ++c) {
            FpMatrix lu = a.element_matrix(u.col(c));
            for (std::size_t j = 0; j < n; ++j) {
                FpVector x = lu.col(j);
                if (i == 0) {
                    std::uint64_t t = 0;
                    for (std::size_t m = 0; m < n; ++m) t = (t + std::uint64_t{x[m]} * basis_trace[m]) % p;
                    g(j, c) = static_cast<Scalar>(t);
                    continue;
                }
                std::uint64_t t = detail::lifted_trace_power(a.element_matrix(x), pi, q);
                if (t % pi != 0) throw AxiomError("trace-form radical: lifted trace not divisible by p^i");
                g(j, c) = static_cast<Scalar>((t / pi) % p);
            }
        }
        u = u * kernel_basis(g);
    }
    return u;
}

/// Quotient algebra A / I for a two-sided ideal I given by basis columns.
inline AlgebraPtr quotient_algebra(const Algebra& a, const FpMatrix& ideal)
{
    const Scalar p = a.modulus();
    auto qm = quotient_map(ideal, a.dim(), p);
    const std::size_t m = qm.section.cols();
    AlgebraData d;
    d.p = p;
    for (std::size_t i = 0; i < m; ++i) d.labels.push_back("q" + std::to_string(i));
    d.left_mult.assign(m, FpMatrix(m, m, p));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            auto v = qm.projection * a.multiply(qm.section.col(i), qm.section.col(j));
            for (std::size_t k = 0; k < m; ++k) d.left_mult[i](k, j) = v[k];
        }
    d.unit = qm.projection * a.unit();
    // idempotents may become zero in the quotient; only the unit is kept
    d.idempotents = {d.unit};
    return std::make_shared<const Algebra>(std::move(d), true);
}

namespace detail {

inline void verify_radical(const Algebra& a, const FpMatrix& j)
{
    const std::size_t n = a.dim();
    const Scalar p = a.modulus();
    EchelonBasis span(n, p);
    for (std::size_t c = 0; c < j.cols(); ++c) span.add(j.col(c));
    for (std::size_t c = 0; c < j.cols(); ++c)
        for (std::size_t b = 0; b < n; ++b) {
            auto v = j.col(c);
            if (!span.contains(a.multiply(a.basis_vector(b), v)) || !span.contains(a.multiply(v, a.basis_vector(b))))
                throw AxiomError("radical verification: not a two-sided ideal");
        }
    // nilpotency: J^k = 0 for some k <= n
    std::vector<FpVector> power;
    for (std::size_t c = 0; c < j.cols(); ++c) power.push_back(j.col(c));
    for (std::size_t k = 0; k <= n && !power.empty(); ++k) {
        EchelonBasis next(n, p);
        std::vector<FpVector> elems;
        for (auto& x : power)
            for (std::size_t c = 0; c < j.cols(); ++c) {
                auto y = a.multiply(x, j.col(c));
                if (next.add(y)) elems.push_back(std::move(y));
            }
        power = std::move(elems);
    }
    if (!power.empty()) throw AxiomError("radical verification: ideal is not nilpotent");
    auto top = quotient_algebra(a, j);
    if (trace_form_radical(*top).cols() != 0)
        throw AxiomError("radical verification: quotient by the ideal is not semisimple");
}

} // namespace detail

/// Jacobson radical as basis columns. Quiver algebras use the arrow ideal; otherwise the
/// trace-form algorithm runs and its result is verified (ideal, nilpotent, semisimple quotient).
inline FpMatrix radical(const AlgebraPtr& a)
{
    if (a->known_radical()) return *a->known_radical();
    std::lock_guard lock(a->cache_mutex_);
    if (a->radical_cache_) return *a->radical_cache_;
    FpMatrix j = trace_form_radical(*a);
    detail::verify_radical(*a, j);
    a->radical_cache_ = j;
    return j;
}

} // namespace mtc
