#pragma once

#include <memory>
#include <string>
#include <vector>

#include "padicr/field.hpp"
#include "padicr/rational.hpp"

namespace padicr {

// |x| = p^{-pexp} in the normalization val_F(p) = [F:Q_p].  Exponents are
// exact rationals; never floats.  UpperBound means |x| <= p^{-pexp} only.
struct AbsValue {
    enum class Kind : uint8_t { Zero, Exact, UpperBound };
    Kind kind = Kind::Zero;
    Rational pexp;

    static AbsValue zero() { return AbsValue{}; }
    static AbsValue exact(Rational e) { return AbsValue{Kind::Exact, e}; }
    static AbsValue upper(Rational e) { return AbsValue{Kind::UpperBound, e}; }

    bool is_zero() const { return kind == Kind::Zero; }
    bool is_exact() const { return kind != Kind::UpperBound; }

    // value comparison, treating the stored exponent at face value
    friend bool value_less(const AbsValue& a, const AbsValue& b) {
        if (a.is_zero()) return !b.is_zero();
        if (b.is_zero()) return false;
        return b.pexp < a.pexp;
    }
    friend bool value_eq(const AbsValue& a, const AbsValue& b) {
        if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
        return a.pexp == b.pexp;
    }
    friend bool value_leq(const AbsValue& a, const AbsValue& b) { return !value_less(b, a); }

    friend AbsValue operator*(const AbsValue& a, const AbsValue& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        AbsValue r;
        r.kind = (a.kind == Kind::Exact && b.kind == Kind::Exact) ? Kind::Exact : Kind::UpperBound;
        r.pexp = a.pexp + b.pexp;
        return r;
    }

    // multiply by q^{qe} for the field's q = p^f
    AbsValue scaled_qpow(const Field& F, const Rational& qe) const {
        if (is_zero()) return *this;
        AbsValue r = *this;
        r.pexp = r.pexp - qe * Rational(F.f());
        return r;
    }

    std::string str(const Field& F) const;
};

// Element of E given by a truncated pi-adic Teichmuller-digit expansion:
//   x = pi^w * sum_{k<prec} [digits_k] pi^k  +  O(pi^{w+prec}).
// Digits are residue-field indices; digits[0] != 0 (normalized).  ZeroToPrec
// carries only the bound x = O(pi^w).  Immutable value type.
class Scalar {
  public:
    enum class Kind : uint8_t { ExactZero, ZeroToPrec, Unit };

    Scalar() = default;

    static Scalar zero(const std::shared_ptr<const Field>& F);
    static Scalar one(const std::shared_ptr<const Field>& F) { return pi_pow(F, 0); }
    static Scalar from_int(const std::shared_ptr<const Field>& F, long long v);
    static Scalar teichmuller(const std::shared_ptr<const Field>& F, uint16_t t);
    static Scalar pi_pow(const std::shared_ptr<const Field>& F, long long k);
    static Scalar from_digits(const std::shared_ptr<const Field>& F, long long w,
                              const std::vector<uint16_t>& digits);
    static Scalar zero_to_prec(const std::shared_ptr<const Field>& F, long long bound);
    // exact value of a canonical representative sum_t [d_t] pi^t
    static Scalar from_rep(const std::shared_ptr<const Field>& F, const CosetRep& a);
    // normalize an exact flat representative known mod pi^known (<= e*B)
    static Scalar from_flat(const std::shared_ptr<const Field>& F, const flat::RElem& x,
                            long long known_pi);

    const std::shared_ptr<const Field>& field() const { return F_; }
    Kind kind() const { return kind_; }
    bool is_unit_form() const { return kind_ == Kind::Unit; }
    bool is_zero_like() const { return kind_ != Kind::Unit; }
    bool is_exact_zero() const { return kind_ == Kind::ExactZero; }

    // pi-adic valuation of the leading digit (Unit only)
    long long pi_val() const { return w_; }
    // valuation in the units val_F(p) = [F:Q_p]; exact rational
    Rational lead_val() const { return Rational(w_ * F_->f()); }
    int precision() const { return (int)dig_.size(); }
    const std::vector<uint16_t>& digits() const { return dig_; }
    // x is known mod pi^{known_pi()}
    long long known_pi() const;
    const flat::RElem& unit_flat() const { return *flat_; }

    AbsValue abs() const;

    friend Scalar operator+(const Scalar& x, const Scalar& y);
    friend Scalar operator-(const Scalar& x, const Scalar& y);
    friend Scalar operator*(const Scalar& x, const Scalar& y);
    Scalar operator-() const;
    friend Scalar operator/(const Scalar& x, const Scalar& y);
    Scalar pow(unsigned n) const;
    Scalar inv() const;

    // x*pi^k, exact shift
    Scalar shift_pi(long long k) const;
    Scalar truncate(long long known) const;

    // equal as far as both are known
    friend bool eq_to_prec(const Scalar& x, const Scalar& y);
    // bitwise-identical normal form
    friend bool operator==(const Scalar& x, const Scalar& y);

    Scalar apply_embedding(const Embedding& s) const;

    // digit of pi^t in the absolute expansion (0 if outside the stored window)
    uint16_t digit_at(long long t) const;

    std::string str() const;
    static Scalar parse(const std::shared_ptr<const Field>& F, const std::string& s);

  private:
    std::shared_ptr<const Field> F_;
    Kind kind_ = Kind::ExactZero;
    long long w_ = 0;
    std::vector<uint16_t> dig_;
    std::shared_ptr<const flat::RElem> flat_;  // canonical flat form of the unit part

    static Scalar make_unit(const std::shared_ptr<const Field>& F, long long w,
                            std::vector<uint16_t> dig, flat::RElem canon);
    static void check_same_field(const Scalar& x, const Scalar& y);
};

// scalars of O_F viewed inside E: multi-power z^n = prod_sigma sigma(z)^{n_sigma}
Scalar monomial_eval(const Scalar& z, const std::vector<int>& n);
// exact closed form of (pi^t)^n
Scalar pi_monomial(const std::shared_ptr<const Field>& F, long long t, const std::vector<int>& n);

}  // namespace padicr
