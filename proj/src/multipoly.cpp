#include "glstab/multipoly.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace glstab {

MultiPoly::MultiPoly(FieldSpec f, int nvars) : field_(f), nvars_(nvars) {
    if (nvars < 0 || nvars > 255) throw BadInput("unsupported variable count");
}

MultiPoly MultiPoly::constant(const FieldSpec& f, int nvars, const Scalar& c) {
    MultiPoly p(f, nvars);
    p.add_term(std::vector<std::uint8_t>(static_cast<std::size_t>(nvars), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(const FieldSpec& f, int nvars, int i) {
    MultiPoly p(f, nvars);
    std::vector<std::uint8_t> e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(i)] = 1;
    p.add_term(e, Scalar::one(f));
    return p;
}

int MultiPoly::total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int t = 0;
        for (auto x : e) t += x;
        d = std::max(d, t);
    }
    return d;
}

void MultiPoly::add_term(const std::vector<std::uint8_t>& exp, const Scalar& c) {
    if (static_cast<int>(exp.size()) != nvars_) throw DimensionMismatch("exponent vector length mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(exp);
    if (it == terms_.end()) {
        terms_.emplace(exp, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Scalar MultiPoly::coefficient(const std::vector<std::uint8_t>& exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    if (field_ != o.field_ || nvars_ != o.nvars_) throw FieldMismatch("polynomial ring mismatch");
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    if (field_ != o.field_ || nvars_ != o.nvars_) throw FieldMismatch("polynomial ring mismatch");
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (field_ != o.field_ || nvars_ != o.nvars_) throw FieldMismatch("polynomial ring mismatch");
    MultiPoly r(field_, nvars_);
    std::vector<std::uint8_t> e(static_cast<std::size_t>(nvars_));
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            for (int i = 0; i < nvars_; ++i)
                e[static_cast<std::size_t>(i)] =
                    static_cast<std::uint8_t>(ea[static_cast<std::size_t>(i)] + eb[static_cast<std::size_t>(i)]);
            r.add_term(e, ca * cb);
        }
    return r;
}

MultiPoly MultiPoly::pow(int k) const {
    MultiPoly r = constant(field_, nvars_, Scalar::one(field_));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    return field_ == o.field_ && nvars_ == o.nvars_ && terms_ == o.terms_;
}

Scalar MultiPoly::eval(const std::vector<Scalar>& point) const {
    if (static_cast<int>(point.size()) != nvars_) throw DimensionMismatch("evaluation point length mismatch");
    Scalar acc = Scalar::zero(field_);
    for (const auto& [e, c] : terms_) {
        Scalar t = c;
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k)
                t *= point[static_cast<std::size_t>(i)];
        acc += t;
    }
    return acc;
}

MultiPoly MultiPoly::substitute(int var, const Scalar& value) const {
    MultiPoly r(field_, nvars_);
    for (const auto& [e, c] : terms_) {
        Scalar t = c;
        for (int k = 0; k < e[static_cast<std::size_t>(var)]; ++k) t *= value;
        std::vector<std::uint8_t> e2 = e;
        e2[static_cast<std::size_t>(var)] = 0;
        r.add_term(e2, t);
    }
    return r;
}

int MultiPoly::degree_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[static_cast<std::size_t>(var)]));
    return d;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) out << " + ";
        out << c.str();
        for (int i = 0; i < nvars_; ++i) {
            int k = e[static_cast<std::size_t>(i)];
            if (k == 0) continue;
            out << "*t" << i;
            if (k > 1) out << "^" << k;
        }
        first = false;
    }
    return out.str();
}

mpz_class pencil_monomial_bound(int n, int dim) {
    // C(dim + n - 1, n)
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(dim + n - 1), static_cast<unsigned long>(n));
    return r;
}

MultiPoly det_of_pencil(const std::vector<Matrix>& basis) {
    if (basis.empty()) throw BadInput("empty pencil");
    const FieldSpec& f = basis[0].field();
    int n = basis[0].rows();
    int dim = static_cast<int>(basis.size());
    if (n > 16) throw BoundExceeded("pencil side too large");
    for (const auto& b : basis)
        if (!b.is_square() || b.rows() != n || b.field() != f)
            throw DimensionMismatch("pencil basis mismatch");
    // entry polynomials: linear forms sum_i B_i[r][c] t_i
    auto entry = [&](int r, int c) {
        MultiPoly p(f, dim);
        std::vector<std::uint8_t> e(static_cast<std::size_t>(dim), 0);
        for (int i = 0; i < dim; ++i) {
            e[static_cast<std::size_t>(i)] = 1;
            p.add_term(e, basis[static_cast<std::size_t>(i)].at(r, c));
            e[static_cast<std::size_t>(i)] = 0;
        }
        return p;
    };
    if (n == 0) return MultiPoly::constant(f, dim, Scalar::one(f));
    // DP over column subsets: d[S] = det of the |S| x |S| minor taken from
    // the first |S| rows and column set S.
    std::uint32_t full = (n >= 31) ? 0 : (1u << n);
    std::vector<MultiPoly> d(full, MultiPoly(f, dim));
    d[0] = MultiPoly::constant(f, dim, Scalar::one(f));
    for (std::uint32_t s = 1; s < full; ++s) {
        int r = std::popcount(s) - 1; // row index being expanded
        MultiPoly acc(f, dim);
        int pos = 0;
        for (int c = 0; c < n; ++c) {
            if (!((s >> c) & 1u)) continue;
            MultiPoly term = d[s & ~(1u << c)] * entry(r, c);
            if ((r + pos) % 2 == 1) acc = acc - term;
            else acc = acc + term;
            ++pos;
        }
        d[s] = std::move(acc);
    }
    return d[full - 1];
}

MultiPoly sum_of_squares_power(const FieldSpec& f, int nvars, int k) {
    MultiPoly q(f, nvars);
    std::vector<std::uint8_t> e(static_cast<std::size_t>(nvars), 0);
    for (int i = 0; i < nvars; ++i) {
        e[static_cast<std::size_t>(i)] = 2;
        q.add_term(e, Scalar::one(f));
        e[static_cast<std::size_t>(i)] = 0;
    }
    return q.pow(k);
}

std::vector<Scalar> nonzero_point(const MultiPoly& p, int grid_max) {
    if (p.is_zero()) return {};
    MultiPoly cur = p;
    std::vector<Scalar> point;
    point.reserve(static_cast<std::size_t>(p.nvars()));
    for (int v = 0; v < p.nvars(); ++v) {
        bool found = false;
        for (int val = 0; val <= grid_max; ++val) {
            Scalar s = Scalar::from_int(p.field(), val);
            MultiPoly sub = cur.substitute(v, s);
            if (!sub.is_zero()) {
                point.push_back(s);
                cur = std::move(sub);
                found = true;
                break;
            }
        }
        if (!found)
            throw InternalAnomaly("nonzero polynomial vanished on the whole grid");
    }
    return point;
}

} // namespace glstab
