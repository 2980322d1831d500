#include "fibseq/transform.hpp"

#include "fibseq/fib.hpp"

namespace fibseq {

Rat fhat_entry(long n, long k) {
    if (k == n) return fib_ratio(static_cast<std::size_t>(n));
    if (k == n - 1) return -fib_ratio_inv(static_cast<std::size_t>(n));
    return Rat(0);
}

Rat inverse_entry(long n, long k) {
    if (k < 0 || k > n) return Rat(0);
    Int fn1 = fib(static_cast<std::size_t>(n) + 1);
    return make_rat(fn1 * fn1, fib(static_cast<std::size_t>(k)) * fib(static_cast<std::size_t>(k) + 1));
}

std::vector<Rat> fhat_apply(const Seq& x, long n) {
    std::vector<Rat> y;
    y.reserve(static_cast<std::size_t>(n) + 1);
    for (long k = 0; k <= n; ++k) {
        Rat v = fib_ratio(static_cast<std::size_t>(k)) * x.eval(k);
        if (k > 0) v -= fib_ratio_inv(static_cast<std::size_t>(k)) * x.eval(k - 1);
        y.push_back(v);
    }
    return y;
}

std::vector<Rat> fhat_apply(const std::vector<Rat>& x) {
    std::vector<Rat> y;
    y.reserve(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        Rat v = fib_ratio(k) * x[k];
        if (k > 0) v -= fib_ratio_inv(k) * x[k - 1];
        y.push_back(v);
    }
    return y;
}

std::vector<Rat> inverse_apply(const std::vector<Rat>& y) {
    std::vector<Rat> x;
    x.reserve(y.size());
    Rat running(0);  // sum_{j<=k} y_j / (f_j f_{j+1})
    for (std::size_t k = 0; k < y.size(); ++k) {
        running += y[k] / Rat(fib(k) * fib(k + 1));
        Int fk1 = fib(k + 1);
        x.push_back(Rat(fk1 * fk1) * running);
    }
    return x;
}

std::vector<Rat> inverse_apply(const Seq& y, long n) {
    std::vector<Rat> vals;
    vals.reserve(static_cast<std::size_t>(n) + 1);
    for (long k = 0; k <= n; ++k) vals.push_back(y.eval(k));
    return inverse_apply(vals);
}

bool identity_check(long n) {
    if (n < 1) throw DomainError("identity_check requires n >= 1");
    // Difference * inverse: row n of the difference matrix has entries at
    // columns n-1 and n only.
    for (long row = 0; row < n; ++row) {
        for (long col = 0; col < n; ++col) {
            Rat entry = fib_ratio(static_cast<std::size_t>(row)) * inverse_entry(row, col);
            if (row > 0) entry -= fib_ratio_inv(static_cast<std::size_t>(row)) * inverse_entry(row - 1, col);
            if (entry != (row == col ? Rat(1) : Rat(0))) return false;
        }
    }
    // Inverse * difference: column k of the difference matrix has entries
    // at rows k and k+1 only.
    for (long row = 0; row < n; ++row) {
        for (long col = 0; col < n; ++col) {
            Rat entry = inverse_entry(row, col) * fib_ratio(static_cast<std::size_t>(col));
            entry += inverse_entry(row, col + 1) * fhat_entry(col + 1, col);
            if (entry != (row == col ? Rat(1) : Rat(0))) return false;
        }
    }
    return true;
}

std::vector<Rat> basis_vector(long k, long n) {
    std::vector<Rat> b;
    b.reserve(static_cast<std::size_t>(n) + 1);
    for (long row = 0; row <= n; ++row) b.push_back(row < k ? Rat(0) : inverse_entry(row, k));
    return b;
}

BasisExpansion basis_expand(const Seq& x, long order, const ExponentSeq& p, long truncation,
                            mpfr_prec_t prec) {
    if (truncation < order) truncation = order;
    std::vector<Rat> y = fhat_apply(x, truncation);
    BasisExpansion out{
        std::vector<Rat>(y.begin(), y.begin() + order + 1), Real(prec), false, {}};
    // The transform of the partial sum agrees with y up to the expansion
    // order, so the remainder's transform is y restricted to k > order.
    const Rat m = p.bound();
    for (long k = order + 1; k <= truncation; ++k) {
        Real term = Real::pow_abs(y[static_cast<std::size_t>(k)], p.at(k) / m, prec);
        if (out.residual < term) out.residual = term;
    }
    if (auto s = x.zero_from()) {
        // Transform vanishes from *s + 1 on; the window is complete once
        // it covers that index.
        if (truncation >= *s) {
            out.residual_complete = true;
            out.note = "remainder transform vanishes beyond index " + std::to_string(*s);
        } else {
            out.note = "window stops before the transform support ends";
        }
    } else {
        out.note = "residual reported over the window only; tail not certified";
    }
    return out;
}

}  // namespace fibseq
