#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace desconf {

/// Element of GF(q) as a dense index in [0, q). Index 0 is the additive identity and
/// index 1 the multiplicative identity. For q = p^k the index is the base-p number
/// whose digits are the polynomial coefficients, constant term least significant.
enum class Elem : std::uint8_t {};

constexpr Elem elem(unsigned v) noexcept { return static_cast<Elem>(v); }
constexpr unsigned value(Elem e) noexcept { return static_cast<unsigned>(e); }

inline constexpr Elem kZero = elem(0);
inline constexpr Elem kOne = elem(1);

/// Parameters that pin down one concrete representation of GF(p^k).
struct FieldSpec {
    unsigned p = 2;
    unsigned k = 1;
    /// Coefficients c_k, ..., c_0 of the monic modulus (high degree first).
    /// Empty means "choose the default"; ignored when k == 1.
    std::vector<unsigned> modulus;

    unsigned order() const;

    /// Spec for the field of order q with the default modulus. Throws InvalidOrder if q
    /// is not a prime power.
    static FieldSpec for_order(unsigned q);

    /// Parses "p" or "p^k" or "p^k/c_k,...,c_0".
    static FieldSpec parse(std::string_view text);
    std::string to_string() const;

    bool operator==(const FieldSpec&) const = default;
};

bool is_prime(unsigned n) noexcept;

/// Returns (p, k) with q = p^k, or nullopt when q is not a prime power >= 2.
std::optional<std::pair<unsigned, unsigned>> prime_power(unsigned q) noexcept;

/// Lexicographically least monic irreducible polynomial of degree k over GF(p), high
/// degree coefficient first.
std::vector<unsigned> default_modulus(unsigned p, unsigned k);

/// True iff the monic polynomial (coefficients high degree first) is irreducible over GF(p).
bool is_irreducible(unsigned p, const std::vector<unsigned>& poly);

/// GF(q) with precomputed q x q addition and multiplication tables. Immutable.
class Field {
public:
    unsigned order() const noexcept { return q_; }
    unsigned characteristic() const noexcept { return spec_.p; }
    unsigned degree() const noexcept { return spec_.k; }
    /// Spec with the modulus filled in (even when the caller left it empty).
    const FieldSpec& spec() const noexcept { return spec_; }

    Elem add(Elem a, Elem b) const noexcept { return add_[index(a, b)]; }
    Elem mul(Elem a, Elem b) const noexcept { return mul_[index(a, b)]; }
    Elem neg(Elem a) const noexcept { return neg_[value(a)]; }
    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
    /// Throws DivisionByZero for 0, and for nonzero elements without an inverse in a
    /// corrupted table.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, unsigned e) const noexcept;

    std::vector<Elem> elements() const;

    /// Polynomial coefficients of e (constant term first), length k.
    std::vector<unsigned> coefficients(Elem e) const;

    /// Copy with a single multiplication-table entry overwritten. Fault injection for
    /// exercising the verification suites; the result is generally not a field.
    Field with_corrupted_product(Elem a, Elem b, Elem product) const;

    bool operator==(const Field& other) const noexcept {
        return spec_ == other.spec_ && add_ == other.add_ && mul_ == other.mul_;
    }

private:
    friend Field make_field(const FieldSpec& spec);
    Field() = default;

    std::size_t index(Elem a, Elem b) const noexcept { return value(a) * q_ + value(b); }
    void derive_inverses();

    FieldSpec spec_;
    unsigned q_ = 0;
    std::vector<Elem> add_;
    std::vector<Elem> mul_;
    std::vector<Elem> neg_;
    std::vector<Elem> inv_;
    std::vector<bool> has_inv_;
};

/// Builds GF(p^k). Errors: NonPrimeP, DegreeMismatch, ReducibleModulus, InvalidOrder
/// (q above 256, the Elem range).
Field make_field(const FieldSpec& spec);

inline std::shared_ptr<const Field> make_shared_field(const FieldSpec& spec) {
    return std::make_shared<const Field>(make_field(spec));
}

/// Exhaustive check of the field axioms against the tables. Returns a description of the
/// first violation, or nullopt.
std::optional<std::string> check_field_axioms(const Field& field);

}  // namespace desconf
