#include "glstab/field.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace glstab {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::gf(std::uint64_t p) {
    if (p > (1ull << 31))
        throw BadInput("prime modulus must be at most 2^31, got " + std::to_string(p));
    if (!is_prime_u64(p))
        throw BadInput("modulus is not prime: " + std::to_string(p));
    FieldSpec f;
    f.kind = FieldKind::PrimeField;
    f.modulus = static_cast<std::uint32_t>(p);
    return f;
}

FieldSpec FieldSpec::rationals() {
    FieldSpec f;
    f.kind = FieldKind::Rationals;
    return f;
}

FieldSpec FieldSpec::parse(std::string_view text) {
    if (text == "q" || text == "Q") return rationals();
    if (text.size() > 3 && text.substr(0, 3) == "gf:") {
        std::uint64_t p = 0;
        for (char c : text.substr(3)) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ParseError("bad field spec: " + std::string(text));
            p = p * 10 + static_cast<std::uint64_t>(c - '0');
            if (p > (1ull << 32)) throw ParseError("field modulus too large");
        }
        return gf(p);
    }
    throw ParseError("bad field spec: " + std::string(text) + " (expected \"gf:p\" or \"q\")");
}

std::string FieldSpec::str() const {
    return is_prime() ? "gf:" + std::to_string(modulus) : "q";
}

// ---------------------------------------------------------------- Scalar

namespace {

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
    // extended Euclid; p prime, 0 < a < p
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(a);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

} // namespace

Scalar Scalar::zero(const FieldSpec& f) { return from_int(f, 0); }
Scalar Scalar::one(const FieldSpec& f) { return from_int(f, 1); }

Scalar Scalar::from_int(const FieldSpec& f, long v) {
    Scalar s;
    s.field_ = f;
    if (f.is_prime()) {
        std::int64_t m = static_cast<std::int64_t>(f.modulus);
        std::int64_t r = static_cast<std::int64_t>(v) % m;
        if (r < 0) r += m;
        s.res_ = static_cast<std::uint64_t>(r);
        s.q_ = 0;
    } else {
        s.q_ = mpq_class(v);
    }
    return s;
}

Scalar Scalar::from_mpq(mpq_class q) {
    Scalar s;
    s.field_ = FieldSpec::rationals();
    q.canonicalize();
    s.q_ = std::move(q);
    return s;
}

Scalar Scalar::residue(const FieldSpec& f, std::uint64_t r) {
    if (!f.is_prime()) throw FieldMismatch("residue() requires a prime field");
    Scalar s;
    s.field_ = f;
    s.res_ = r % f.modulus;
    return s;
}

Scalar Scalar::parse(const FieldSpec& f, std::string_view text) {
    if (text.empty()) throw ParseError("empty scalar");
    std::string t(text);
    if (f.is_prime()) {
        try {
            long v = std::stol(t);
            return from_int(f, v);
        } catch (const std::exception&) {
            throw ParseError("bad prime-field scalar: " + t);
        }
    }
    try {
        mpq_class q(t);
        q.canonicalize();
        return from_mpq(q);
    } catch (const std::exception&) {
        throw ParseError("bad rational scalar: " + t);
    }
}

void Scalar::check_same_field(const Scalar& o) const {
    if (field_ != o.field_)
        throw FieldMismatch("scalar fields differ: " + field_.str() + " vs " + o.field_.str());
}

bool Scalar::is_zero() const {
    return field_.is_prime() ? res_ == 0 : q_ == 0;
}

bool Scalar::is_one() const {
    return field_.is_prime() ? res_ == 1 % field_.modulus : q_ == 1;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(o);
    Scalar r;
    r.field_ = field_;
    if (field_.is_prime()) {
        r.res_ = (res_ + o.res_) % field_.modulus;
    } else {
        r.q_ = q_ + o.q_;
    }
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(o);
    Scalar r;
    r.field_ = field_;
    if (field_.is_prime()) {
        r.res_ = (res_ * o.res_) % field_.modulus; // p <= 2^31 keeps this in range
    } else {
        r.q_ = q_ * o.q_;
    }
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
    Scalar r;
    r.field_ = field_;
    if (field_.is_prime()) {
        r.res_ = res_ == 0 ? 0 : field_.modulus - res_;
    } else {
        r.q_ = -q_;
    }
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero in " + field_.str());
    Scalar r;
    r.field_ = field_;
    if (field_.is_prime()) {
        r.res_ = mod_inverse(res_, field_.modulus);
    } else {
        r.q_ = 1 / q_;
    }
    return r;
}

bool Scalar::operator==(const Scalar& o) const {
    if (field_ != o.field_) return false;
    return field_.is_prime() ? res_ == o.res_ : q_ == o.q_;
}

bool Scalar::operator<(const Scalar& o) const {
    check_same_field(o);
    return field_.is_prime() ? res_ < o.res_ : q_ < o.q_;
}

std::string Scalar::str() const {
    if (field_.is_prime()) return std::to_string(res_);
    return q_.get_str();
}

// ------------------------------------------------------------ Polynomial

Polynomial::Polynomial(FieldSpec f, std::vector<Scalar> coeffs)
    : field_(f), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_)
        if (c.field() != field_) throw FieldMismatch("polynomial coefficient field mismatch");
    trim();
}

Polynomial Polynomial::from_ints(const FieldSpec& f, const std::vector<long>& ascending) {
    std::vector<Scalar> cs;
    cs.reserve(ascending.size());
    for (long v : ascending) cs.push_back(Scalar::from_int(f, v));
    return Polynomial(f, std::move(cs));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Scalar Polynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Scalar::zero(field_);
    return coeffs_[static_cast<std::size_t>(k)];
}

Scalar Polynomial::leading() const {
    if (is_zero()) throw DegreeZero("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

Scalar Polynomial::eval(const Scalar& x) const {
    Scalar acc = Scalar::zero(field_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) throw DegreeZero("cannot normalize the zero polynomial");
    Scalar inv = leading().inverse();
    std::vector<Scalar> cs;
    cs.reserve(coeffs_.size());
    for (const auto& c : coeffs_) cs.push_back(c * inv);
    return Polynomial(field_, std::move(cs));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (field_ != o.field_) throw FieldMismatch("polynomial field mismatch");
    std::vector<Scalar> cs;
    std::size_t n = std::max(coeffs_.size(), o.coeffs_.size());
    cs.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        cs.push_back(coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k)));
    return Polynomial(field_, std::move(cs));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    if (field_ != o.field_) throw FieldMismatch("polynomial field mismatch");
    std::vector<Scalar> cs;
    std::size_t n = std::max(coeffs_.size(), o.coeffs_.size());
    cs.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        cs.push_back(coeff(static_cast<int>(k)) - o.coeff(static_cast<int>(k)));
    return Polynomial(field_, std::move(cs));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (field_ != o.field_) throw FieldMismatch("polynomial field mismatch");
    if (is_zero() || o.is_zero()) return Polynomial(field_, {});
    std::vector<Scalar> cs(coeffs_.size() + o.coeffs_.size() - 1, Scalar::zero(field_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            cs[i + j] += coeffs_[i] * o.coeffs_[j];
    return Polynomial(field_, std::move(cs));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
    if (field_ != d.field_) throw FieldMismatch("polynomial field mismatch");
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    std::vector<Scalar> rem = coeffs_;
    int dd = d.degree();
    Scalar lead_inv = d.leading().inverse();
    if (degree() < dd) return {Polynomial(field_, {}), *this};
    std::vector<Scalar> quot(static_cast<std::size_t>(degree() - dd + 1), Scalar::zero(field_));
    for (int k = degree() - dd; k >= 0; --k) {
        Scalar q = rem[static_cast<std::size_t>(k + dd)] * lead_inv;
        quot[static_cast<std::size_t>(k)] = q;
        if (q.is_zero()) continue;
        for (int j = 0; j <= dd; ++j)
            rem[static_cast<std::size_t>(k + j)] -= q * d.coeff(j);
    }
    return {Polynomial(field_, std::move(quot)), Polynomial(field_, std::move(rem))};
}

bool Polynomial::operator==(const Polynomial& o) const {
    return field_ == o.field_ && coeffs_ == o.coeffs_;
}

std::string Polynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        Scalar c = coeff(k);
        if (c.is_zero()) continue;
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) {
            if (neg) out << "-";
        } else {
            out << (neg ? " - " : " + ");
        }
        if (neg) cs = cs.substr(1);
        if (k == 0 || cs != "1") out << cs;
        if (k > 0 && cs != "1") out << "*";
        if (k > 0) out << "x";
        if (k > 1) out << "^" << k;
        first = false;
    }
    return out.str();
}

// ---------------------------------------------------- irreducibility

namespace {

// All monic polynomials of the given degree over GF(p), by counting.
std::vector<Polynomial> monic_polys(const FieldSpec& f, int deg) {
    std::uint64_t p = f.modulus;
    std::uint64_t count = 1;
    for (int i = 0; i < deg; ++i) count *= p;
    std::vector<Polynomial> out;
    out.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<Scalar> cs;
        std::uint64_t v = idx;
        for (int i = 0; i < deg; ++i) {
            cs.push_back(Scalar::residue(f, v % p));
            v /= p;
        }
        cs.push_back(Scalar::one(f));
        out.emplace_back(f, std::move(cs));
    }
    return out;
}

IrredVerdict irreducible_gf(const Polynomial& p) {
    int deg = p.degree();
    if (deg > 8 || p.field().modulus > 13)
        throw BoundExceeded("prime-field irreducibility limited to degree <= 8, modulus <= 13");
    if (deg == 1) return {IrredTag::Irreducible, std::nullopt};
    for (int d = 1; d <= deg / 2; ++d) {
        for (const auto& cand : monic_polys(p.field(), d)) {
            auto [q, r] = p.divmod(cand);
            (void)q;
            if (r.is_zero()) return {IrredTag::Reducible, cand};
        }
    }
    return {IrredTag::Irreducible, std::nullopt};
}

// Positive divisors, by trial division; refuses to grind on huge inputs.
std::vector<mpz_class> divisors_of(const mpz_class& n_in) {
    mpz_class n = abs(n_in);
    if (n == 0) return {};
    if (n > mpz_class("1000000000000"))
        throw BoundExceeded("rational root search: constant term too large to factor");
    std::vector<mpz_class> out;
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            mpz_class e = n / d;
            if (e != d) out.push_back(e);
        }
    }
    return out;
}

IrredVerdict irreducible_q(const Polynomial& p) {
    int deg = p.degree();
    if (deg == 1) return {IrredTag::Irreducible, std::nullopt};
    if (deg > 3) return {IrredTag::Unknown, std::nullopt};
    // degree 2 or 3: reducible iff there is a rational root
    // clear denominators first
    mpz_class lcm_den = 1;
    for (int k = 0; k <= deg; ++k)
        lcm_den = lcm(lcm_den, p.coeff(k).rat().get_den());
    std::vector<mpz_class> ic(static_cast<std::size_t>(deg) + 1);
    for (int k = 0; k <= deg; ++k) {
        mpq_class scaled = p.coeff(k).rat() * lcm_den;
        ic[static_cast<std::size_t>(k)] = scaled.get_num();
    }
    if (ic[0] == 0) {
        // x divides
        Polynomial x = Polynomial::from_ints(p.field(), {0, 1});
        return {IrredTag::Reducible, x};
    }
    auto num_divs = divisors_of(ic[0]);
    auto den_divs = divisors_of(ic[static_cast<std::size_t>(deg)]);
    for (const auto& a : num_divs) {
        for (const auto& b : den_divs) {
            for (int sign : {1, -1}) {
                mpq_class r(sign * a, b);
                r.canonicalize();
                Scalar root = Scalar::from_mpq(r);
                if (p.eval(root).is_zero()) {
                    // factor x - r
                    Polynomial factor(p.field(), {-root, Scalar::one(p.field())});
                    return {IrredTag::Reducible, factor};
                }
            }
        }
    }
    return {IrredTag::Irreducible, std::nullopt};
}

} // namespace

IrredVerdict poly_is_irreducible(const Polynomial& p) {
    if (p.degree() < 1) throw DegreeZero("irreducibility is defined for degree >= 1");
    return p.field().is_prime() ? irreducible_gf(p) : irreducible_q(p);
}

std::optional<std::uint32_t> irreducible_by_prime_reduction(const Polynomial& p) {
    if (p.field().is_prime() || p.degree() < 1) return std::nullopt;
    if (p.degree() > 8) return std::nullopt;
    // integer model of the primitive part
    mpz_class lcm_den = 1;
    for (int k = 0; k <= p.degree(); ++k)
        lcm_den = lcm(lcm_den, p.coeff(k).rat().get_den());
    std::vector<mpz_class> ic(static_cast<std::size_t>(p.degree()) + 1);
    for (int k = 0; k <= p.degree(); ++k) {
        mpq_class scaled = p.coeff(k).rat() * lcm_den;
        ic[static_cast<std::size_t>(k)] = scaled.get_num();
    }
    for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
        if (ic.back() % q == 0) continue; // degree must survive reduction
        FieldSpec fq = FieldSpec::gf(q);
        std::vector<Scalar> cs;
        cs.reserve(ic.size());
        for (const auto& c : ic) {
            mpz_class r = c % q;
            if (r < 0) r += q;
            cs.push_back(Scalar::residue(fq, r.get_ui()));
        }
        Polynomial red(fq, std::move(cs));
        if (poly_is_irreducible(red).tag == IrredTag::Irreducible)
            return q;
    }
    return std::nullopt;
}

} // namespace glstab
