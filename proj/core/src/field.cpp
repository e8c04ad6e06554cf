#include "desconf/field.hpp"

#include "desconf/error.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace desconf {

namespace {

using Poly = std::vector<unsigned>;  // constant term first

// Remainder of a modulo the monic polynomial m over GF(p). Both constant term first.
Poly poly_mod(Poly a, const Poly& m, unsigned p) {
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const unsigned lead = a.back() % p;
        if (lead != 0) {
            const std::size_t shift = a.size() - 1 - dm;
            for (std::size_t i = 0; i <= dm; ++i) {
                a[shift + i] = (a[shift + i] + (p - lead) * m[i]) % p;
            }
        }
        a.pop_back();
    }
    return a;
}

Poly low_first(const std::vector<unsigned>& high_first) {
    return Poly(high_first.rbegin(), high_first.rend());
}

unsigned parse_unsigned(std::string_view s) {
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw Error(ErrorCode::Parse, "expected an unsigned integer, got '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPrimeP: return "NonPrimeP";
        case ErrorCode::ReducibleModulus: return "ReducibleModulus";
        case ErrorCode::DegreeMismatch: return "DegreeMismatch";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::InvalidOrder: return "InvalidOrder";
        case ErrorCode::ZeroVector: return "ZeroVector";
        case ErrorCode::MixedSpaces: return "MixedSpaces";
        case ErrorCode::WrongDimension: return "WrongDimension";
        case ErrorCode::WrongSpace: return "WrongSpace";
        case ErrorCode::NotInPerspective: return "NotInPerspective";
        case ErrorCode::Degenerate: return "Degenerate";
        case ErrorCode::CompressorMeetsHyperplane: return "CompressorMeetsHyperplane";
        case ErrorCode::BadApexLine: return "BadApexLine";
        case ErrorCode::ScaleLimit: return "ScaleLimit";
        case ErrorCode::Parse: return "Parse";
        case ErrorCode::InternalDefect: return "InternalDefect";
    }
    return "Unknown";
}

bool is_prime(unsigned n) noexcept {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::optional<std::pair<unsigned, unsigned>> prime_power(unsigned q) noexcept {
    if (q < 2) return std::nullopt;
    unsigned p = 2;
    while (q % p != 0) ++p;
    unsigned k = 0;
    while (q % p == 0) {
        q /= p;
        ++k;
    }
    if (q != 1) return std::nullopt;
    return std::pair{p, k};
}

unsigned FieldSpec::order() const {
    unsigned q = 1;
    for (unsigned i = 0; i < k; ++i) q *= p;
    return q;
}

FieldSpec FieldSpec::for_order(unsigned q) {
    auto pk = prime_power(q);
    if (!pk) throw Error(ErrorCode::InvalidOrder, std::to_string(q) + " is not a prime power");
    return FieldSpec{pk->first, pk->second, {}};
}

FieldSpec FieldSpec::parse(std::string_view text) {
    FieldSpec spec;
    const auto slash = text.find('/');
    const std::string_view head = text.substr(0, slash);
    const auto caret = head.find('^');
    spec.p = parse_unsigned(head.substr(0, caret));
    spec.k = caret == std::string_view::npos ? 1 : parse_unsigned(head.substr(caret + 1));
    if (slash != std::string_view::npos) {
        std::string_view rest = text.substr(slash + 1);
        while (true) {
            const auto comma = rest.find(',');
            spec.modulus.push_back(parse_unsigned(rest.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
    }
    return spec;
}

std::string FieldSpec::to_string() const {
    std::ostringstream os;
    os << p;
    if (k > 1) {
        os << '^' << k;
        if (!modulus.empty()) {
            os << '/';
            for (std::size_t i = 0; i < modulus.size(); ++i) os << (i ? "," : "") << modulus[i];
        }
    }
    return os.str();
}

bool is_irreducible(unsigned p, const std::vector<unsigned>& poly) {
    const Poly m = low_first(poly);
    const std::size_t d = m.size() - 1;
    if (d <= 1) return d == 1;
    // Trial division by every monic polynomial of degree 1..d/2.
    for (std::size_t deg = 1; deg <= d / 2; ++deg) {
        std::size_t count = 1;
        for (std::size_t i = 0; i < deg; ++i) count *= p;
        for (std::size_t c = 0; c < count; ++c) {
            Poly f(deg + 1);
            std::size_t x = c;
            for (std::size_t i = 0; i < deg; ++i, x /= p) f[i] = static_cast<unsigned>(x % p);
            f[deg] = 1;
            const Poly r = poly_mod(m, f, p);
            if (std::all_of(r.begin(), r.end(), [](unsigned v) { return v == 0; })) return false;
        }
    }
    return true;
}

std::vector<unsigned> default_modulus(unsigned p, unsigned k) {
    std::size_t count = 1;
    for (unsigned i = 0; i < k; ++i) count *= p;
    for (std::size_t c = 0; c < count; ++c) {
        // c enumerates (c_{k-1}, ..., c_0) with c_{k-1} most significant.
        std::vector<unsigned> poly(k + 1);
        poly[0] = 1;
        std::size_t x = c;
        for (unsigned i = k; i >= 1; --i, x /= p) poly[i] = static_cast<unsigned>(x % p);
        if (is_irreducible(p, poly)) return poly;
    }
    throw Error(ErrorCode::InternalDefect, "no irreducible polynomial found");
}

Field make_field(const FieldSpec& in) {
    if (!is_prime(in.p)) throw Error(ErrorCode::NonPrimeP, std::to_string(in.p) + " is not prime");
    if (in.k < 1) throw Error(ErrorCode::DegreeMismatch, "extension degree must be positive");
    const unsigned q = in.order();
    if (q > 256) throw Error(ErrorCode::InvalidOrder, "fields above order 256 are not supported");

    FieldSpec spec = in;
    if (spec.k == 1) {
        spec.modulus.clear();
    } else if (spec.modulus.empty()) {
        spec.modulus = default_modulus(spec.p, spec.k);
    } else {
        if (spec.modulus.size() != spec.k + 1) {
            throw Error(ErrorCode::DegreeMismatch, "modulus " + spec.to_string() + " does not have degree k");
        }
        if (spec.modulus.front() != 1) {
            throw Error(ErrorCode::DegreeMismatch, "modulus must be monic");
        }
        for (unsigned c : spec.modulus) {
            if (c >= spec.p) throw Error(ErrorCode::Parse, "modulus coefficient out of range");
        }
        if (!is_irreducible(spec.p, spec.modulus)) {
            throw Error(ErrorCode::ReducibleModulus, spec.to_string());
        }
    }

    Field f;
    f.spec_ = spec;
    f.q_ = q;
    const unsigned p = spec.p;
    const unsigned k = spec.k;

    auto digits = [&](unsigned v) {
        Poly d(k);
        for (unsigned i = 0; i < k; ++i, v /= p) d[i] = v % p;
        return d;
    };
    auto undigits = [&](const Poly& d) {
        unsigned v = 0;
        for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
        return v;
    };

    const Poly m = k == 1 ? Poly{0, 1} : low_first(spec.modulus);
    f.add_.resize(q * q);
    f.mul_.resize(q * q);
    for (unsigned a = 0; a < q; ++a) {
        const Poly da = digits(a);
        for (unsigned b = 0; b < q; ++b) {
            const Poly db = digits(b);
            Poly sum(k);
            for (unsigned i = 0; i < k; ++i) sum[i] = (da[i] + db[i]) % p;
            Poly prod(2 * k - 1, 0);
            for (unsigned i = 0; i < k; ++i) {
                for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
            Poly red = k == 1 ? prod : poly_mod(prod, m, p);
            red.resize(k, 0);
            f.add_[a * q + b] = elem(undigits(sum));
            f.mul_[a * q + b] = elem(undigits(red));
        }
    }
    f.derive_inverses();
    return f;
}

void Field::derive_inverses() {
    neg_.assign(q_, kZero);
    inv_.assign(q_, kZero);
    has_inv_.assign(q_, false);
    for (unsigned a = 0; a < q_; ++a) {
        for (unsigned b = 0; b < q_; ++b) {
            if (add_[a * q_ + b] == kZero) neg_[a] = elem(b);
            if (mul_[a * q_ + b] == kOne && !has_inv_[a]) {
                inv_[a] = elem(b);
                has_inv_[a] = true;
            }
        }
    }
}

Elem Field::inv(Elem a) const {
    if (a == kZero || !has_inv_[value(a)]) {
        throw Error(ErrorCode::DivisionByZero, "element " + std::to_string(value(a)) + " has no inverse");
    }
    return inv_[value(a)];
}

Elem Field::pow(Elem a, unsigned e) const noexcept {
    Elem r = kOne;
    for (unsigned i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

std::vector<Elem> Field::elements() const {
    std::vector<Elem> out;
    out.reserve(q_);
    for (unsigned v = 0; v < q_; ++v) out.push_back(elem(v));
    return out;
}

std::vector<unsigned> Field::coefficients(Elem e) const {
    std::vector<unsigned> d(spec_.k);
    unsigned v = value(e);
    for (unsigned i = 0; i < spec_.k; ++i, v /= spec_.p) d[i] = v % spec_.p;
    return d;
}

Field Field::with_corrupted_product(Elem a, Elem b, Elem product) const {
    Field copy = *this;
    copy.mul_[index(a, b)] = product;
    copy.derive_inverses();
    return copy;
}

std::optional<std::string> check_field_axioms(const Field& f) {
    const auto els = f.elements();
    auto name = [](Elem e) { return std::to_string(value(e)); };
    for (Elem a : els) {
        if (f.add(a, kZero) != a) return "0 is not an additive identity for " + name(a);
        if (f.mul(a, kOne) != a) return "1 is not a multiplicative identity for " + name(a);
        if (f.add(a, f.neg(a)) != kZero) return "no additive inverse for " + name(a);
        if (a != kZero) {
            bool found = false;
            for (Elem b : els) found = found || f.mul(a, b) == kOne;
            if (!found) return "no multiplicative inverse for " + name(a);
        }
        for (Elem b : els) {
            if (f.add(a, b) != f.add(b, a)) return "addition not commutative at " + name(a) + "," + name(b);
            if (f.mul(a, b) != f.mul(b, a)) return "multiplication not commutative at " + name(a) + "," + name(b);
            if (a != kZero && b != kZero && f.mul(a, b) == kZero) {
                return "zero divisors " + name(a) + "," + name(b);
            }
            for (Elem c : els) {
                const std::string at = " at " + name(a) + "," + name(b) + "," + name(c);
                if (f.add(f.add(a, b), c) != f.add(a, f.add(b, c))) return "addition not associative" + at;
                if (f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))) return "multiplication not associative" + at;
                if (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))) return "distributivity fails" + at;
            }
        }
    }
    return std::nullopt;
}

}  // namespace desconf
