#include "padicr/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace padicr {

namespace {
constexpr long long kFar = (1LL << 58);
}

std::string AbsValue::str(const Field& F) const {
    (void)F;
    switch (kind) {
        case Kind::Zero: return "0";
        case Kind::Exact: return "p^-(" + pexp.str() + ")";
        case Kind::UpperBound: return "<=p^-(" + pexp.str() + ")";
    }
    return "?";
}

Scalar Scalar::zero(const std::shared_ptr<const Field>& F) {
    Scalar s;
    s.F_ = F;
    s.kind_ = Kind::ExactZero;
    return s;
}

Scalar Scalar::zero_to_prec(const std::shared_ptr<const Field>& F, long long bound) {
    Scalar s;
    s.F_ = F;
    s.kind_ = Kind::ZeroToPrec;
    s.w_ = bound;
    return s;
}

Scalar Scalar::make_unit(const std::shared_ptr<const Field>& F, long long w,
                         std::vector<uint16_t> dig, flat::RElem canon) {
    Scalar s;
    s.F_ = F;
    s.kind_ = Kind::Unit;
    s.w_ = w;
    s.dig_ = std::move(dig);
    s.flat_ = std::make_shared<const flat::RElem>(std::move(canon));
    return s;
}

Scalar Scalar::from_flat(const std::shared_ptr<const Field>& F, const flat::RElem& x,
                         long long known_pi) {
    const long long flat_cap = (long long)F->e() * F->zp_len();
    long long known = std::min(known_pi, flat_cap);
    auto v = F->r_val(x);
    if (!v || *v >= known) {
        if (known >= kFar) return zero(F);
        return zero_to_prec(F, known);
    }
    long long w = *v;
    int prec = (int)std::min<long long>(known - w, F->precision());
    flat::RElem u = F->r_shift_pi(x, (int)-w);
    std::vector<uint16_t> dig;
    dig.reserve(prec);
    flat::RElem canon = F->r_zero();
    flat::RElem pik = F->r_one();
    for (int k = 0; k < prec; ++k) {
        uint16_t t = F->r_residue(u);
        dig.push_back(t);
        if (t != 0) {
            flat::RElem lift = F->r_from_u(F->teich_lift(t));
            canon = F->r_add(canon, F->r_mul(pik, lift));
            u = F->r_sub(u, lift);
        }
        u = F->r_div_pi(u);
        pik = F->r_mul_pi(pik);
    }
    assert(dig[0] != 0);
    return make_unit(F, w, std::move(dig), std::move(canon));
}

Scalar Scalar::from_int(const std::shared_ptr<const Field>& F, long long v) {
    if (v == 0) return zero(F);
    bool neg = v < 0;
    flat::RElem x = F->r_zero();
    x.c[0].b[0] = F->zp_from_u64((uint64_t)(neg ? -v : v));
    if (neg) x = F->r_neg(x);
    return from_flat(F, x, kFar);
}

Scalar Scalar::teichmuller(const std::shared_ptr<const Field>& F, uint16_t t) {
    if (t == 0) return zero(F);
    if (t >= F->q()) throw InvalidParameters("teichmuller: index out of range");
    std::vector<uint16_t> dig(F->precision(), 0);
    dig[0] = t;
    return make_unit(F, 0, std::move(dig), F->r_from_u(F->teich_lift(t)));
}

Scalar Scalar::pi_pow(const std::shared_ptr<const Field>& F, long long k) {
    std::vector<uint16_t> dig(F->precision(), 0);
    dig[0] = 1;
    return make_unit(F, k, std::move(dig), F->r_one());
}

Scalar Scalar::from_digits(const std::shared_ptr<const Field>& F, long long w,
                           const std::vector<uint16_t>& digits) {
    // strip leading zeros, rebuild canonical flat form
    size_t lead = 0;
    while (lead < digits.size() && digits[lead] == 0) ++lead;
    if (lead == digits.size()) return zero_to_prec(F, w + (long long)digits.size());
    flat::RElem canon = F->r_zero();
    flat::RElem pik = F->r_one();
    std::vector<uint16_t> dig(digits.begin() + lead, digits.end());
    if ((int)dig.size() > F->precision()) dig.resize(F->precision());
    for (size_t k = 0; k < dig.size(); ++k) {
        if (dig[k]) canon = F->r_add(canon, F->r_mul(pik, F->r_from_u(F->teich_lift(dig[k]))));
        pik = F->r_mul_pi(pik);
    }
    return make_unit(F, w + (long long)lead, std::move(dig), std::move(canon));
}

Scalar Scalar::from_rep(const std::shared_ptr<const Field>& F, const CosetRep& a) {
    std::vector<uint16_t> dig(a.digits.begin(), a.digits.end());
    dig.resize(std::max<size_t>(dig.size(), 1), 0);
    // exact value: pad with zeros to working precision
    dig.resize(std::max<size_t>((size_t)F->precision(), dig.size()), 0);
    size_t lead = 0;
    while (lead < dig.size() && dig[lead] == 0) ++lead;
    if (lead == dig.size()) return zero(F);
    return from_digits(F, 0, dig);
}

long long Scalar::known_pi() const {
    switch (kind_) {
        case Kind::ExactZero: return kFar;
        case Kind::ZeroToPrec: return w_;
        case Kind::Unit: return w_ + (long long)dig_.size();
    }
    return 0;
}

AbsValue Scalar::abs() const {
    switch (kind_) {
        case Kind::ExactZero: return AbsValue::zero();
        case Kind::ZeroToPrec: return AbsValue::upper(Rational(w_ * F_->f()));
        case Kind::Unit: return AbsValue::exact(Rational(w_ * F_->f()));
    }
    return AbsValue::zero();
}

void Scalar::check_same_field(const Scalar& x, const Scalar& y) {
    if (!(x.F_->desc() == y.F_->desc()))
        throw FieldMismatch(x.F_->desc().str() + " vs " + y.F_->desc().str());
}

Scalar Scalar::truncate(long long known) const {
    if (kind_ == Kind::ExactZero) return *this;
    if (known >= known_pi()) return *this;
    if (kind_ == Kind::ZeroToPrec) return zero_to_prec(F_, known);
    if (w_ >= known) return zero_to_prec(F_, known);
    std::vector<uint16_t> dig(dig_.begin(), dig_.begin() + (size_t)(known - w_));
    return from_digits(F_, w_, dig);
}

Scalar operator+(const Scalar& x, const Scalar& y) {
    Scalar::check_same_field(x, y);
    const auto& F = x.F_;
    if (x.kind_ == Scalar::Kind::ExactZero) return y;
    if (y.kind_ == Scalar::Kind::ExactZero) return x;
    long long known = std::min(x.known_pi(), y.known_pi());
    if (x.kind_ == Scalar::Kind::ZeroToPrec) return y.truncate(known);
    if (y.kind_ == Scalar::Kind::ZeroToPrec) return x.truncate(known);
    long long m0 = std::min(x.w_, y.w_);
    known = std::min(known, m0 + (long long)F->precision());
    flat::RElem acc = F->r_zero();
    if (x.w_ < known) acc = F->r_add(acc, F->r_shift_pi(x.unit_flat(), (int)(x.w_ - m0)));
    if (y.w_ < known) acc = F->r_add(acc, F->r_shift_pi(y.unit_flat(), (int)(y.w_ - m0)));
    Scalar s = Scalar::from_flat(F, acc, known - m0);
    return s.shift_pi(m0);
}

Scalar Scalar::operator-() const {
    if (kind_ != Kind::Unit) return *this;
    Scalar s = from_flat(F_, F_->r_neg(unit_flat()), (long long)dig_.size());
    return s.shift_pi(w_);
}

Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

Scalar operator*(const Scalar& x, const Scalar& y) {
    Scalar::check_same_field(x, y);
    const auto& F = x.F_;
    if (x.kind_ == Scalar::Kind::ExactZero || y.kind_ == Scalar::Kind::ExactZero)
        return Scalar::zero(F);
    if (x.kind_ == Scalar::Kind::ZeroToPrec || y.kind_ == Scalar::Kind::ZeroToPrec) {
        // bound or valuation of each operand adds up either way
        return Scalar::zero_to_prec(F, std::min(x.w_ + y.w_, kFar));
    }
    long long prec = std::min((long long)x.dig_.size(), (long long)y.dig_.size());
    Scalar s = Scalar::from_flat(F, F->r_mul(x.unit_flat(), y.unit_flat()), prec);
    return s.shift_pi(x.w_ + y.w_);
}

Scalar operator/(const Scalar& x, const Scalar& y) {
    Scalar::check_same_field(x, y);
    const auto& F = x.F_;
    if (y.kind_ != Scalar::Kind::Unit)
        throw DivisionByZeroToPrecision("divisor indistinguishable from zero");
    if (x.kind_ == Scalar::Kind::ExactZero) return x;
    if (x.kind_ == Scalar::Kind::ZeroToPrec) return Scalar::zero_to_prec(F, x.w_ - y.w_);
    long long prec = std::min((long long)x.dig_.size(), (long long)y.dig_.size());
    Scalar s = Scalar::from_flat(F, F->r_mul(x.unit_flat(), F->r_inv(y.unit_flat())), prec);
    return s.shift_pi(x.w_ - y.w_);
}

Scalar Scalar::shift_pi(long long k) const {
    if (kind_ == Kind::ExactZero || k == 0) return *this;
    Scalar s = *this;
    s.w_ += k;
    return s;
}

Scalar Scalar::pow(unsigned n) const {
    Scalar r = one(F_);
    Scalar base = *this;
    while (n) {
        if (n & 1) r = r * base;
        if (n >>= 1) base = base * base;
    }
    return r;
}

Scalar Scalar::inv() const { return one(F_) / *this; }

bool eq_to_prec(const Scalar& x, const Scalar& y) {
    Scalar::check_same_field(x, y);
    Scalar d = x - y;
    return d.kind() != Scalar::Kind::Unit;
}

bool operator==(const Scalar& x, const Scalar& y) {
    return x.kind() == y.kind() && x.pi_val() == y.pi_val() && x.digits() == y.digits() &&
           x.field()->desc() == y.field()->desc();
}

uint16_t Scalar::digit_at(long long t) const {
    if (kind_ != Kind::Unit) return 0;
    long long i = t - w_;
    if (i < 0 || i >= (long long)dig_.size()) return 0;
    return dig_[(size_t)i];
}

Scalar Scalar::apply_embedding(const Embedding& s) const {
    if (kind_ != Kind::Unit) return *this;
    const int e = F_->e();
    std::vector<uint16_t> dig(dig_.size());
    for (size_t k = 0; k < dig_.size(); ++k) {
        uint16_t t = F_->fq_frob(dig_[k], s.frob_power);
        long long pos = w_ + (long long)k;
        int tw = (int)(((s.root_twist * (pos % e)) % e + e) % e);
        if (tw) {
            uint16_t zp = F_->fq_pow(F_->zeta_idx(), tw);
            t = F_->fq_mul(t, zp);
        }
        dig[k] = t;
    }
    return from_digits(F_, w_, dig);
}

Scalar monomial_eval(const Scalar& z, const std::vector<int>& n) {
    const auto& F = z.field();
    auto embs = F->embeddings();
    if (n.size() != embs.size())
        throw InvalidParameters("monomial_eval: index arity " + std::to_string(n.size()) +
                                " != |S| = " + std::to_string(embs.size()));
    Scalar acc = Scalar::one(F);
    for (size_t s = 0; s < embs.size(); ++s) {
        if (n[s] == 0) continue;
        if (n[s] < 0) throw InvalidParameters("monomial_eval: negative exponent");
        Scalar sz = embs[s].is_identity() ? z : z.apply_embedding(embs[s]);
        acc = acc * sz.pow((unsigned)n[s]);
    }
    return acc;
}

Scalar pi_monomial(const std::shared_ptr<const Field>& F, long long t, const std::vector<int>& n) {
    // prod_s (zeta^{k_s} pi)^{t n_s} = [zeta^{t sum k_s n_s}] pi^{t|n|}
    auto embs = F->embeddings();
    long long total = 0, twist = 0;
    for (size_t s = 0; s < embs.size(); ++s) {
        total += n[s];
        twist += (long long)embs[s].root_twist * n[s];
    }
    long long e = F->e();
    int tw = (int)(((t % e) * (twist % e) % e + e) % e);
    Scalar u = tw ? Scalar::teichmuller(F, F->fq_pow(F->zeta_idx(), tw)) : Scalar::one(F);
    return u.shift_pi(t * total);
}

std::string Scalar::str() const {
    if (kind_ == Kind::ExactZero) return "0";
    std::ostringstream os;
    Rational lv = lead_val();
    if (kind_ == Kind::ZeroToPrec) {
        os << "O(" << F_->p() << "^(" << lv.num << "/" << lv.den << "))";
        return os.str();
    }
    os << F_->p() << "^(" << lv.num << "/" << lv.den << ") * [";
    for (size_t i = 0; i < dig_.size(); ++i) {
        if (i) os << ",";
        os << dig_[i];
    }
    os << "]";
    return os.str();
}

Scalar Scalar::parse(const std::shared_ptr<const Field>& F, const std::string& sraw) {
    std::string s;
    for (char c : sraw)
        if (!isspace((unsigned char)c)) s += c;
    if (s == "0") return zero(F);
    auto parse_val = [&](const std::string& v) -> long long {
        Rational lv = parse_rational(v);
        Rational w = lv / Rational(F->f());
        if (!w.is_integer()) throw ParseError("lead valuation outside value group: " + v);
        return w.num;
    };
    if (s.rfind("O(", 0) == 0) {
        auto caret = s.find("^(");
        auto close = s.rfind("))");
        if (caret == std::string::npos || close == std::string::npos) throw ParseError(sraw);
        return zero_to_prec(F, parse_val(s.substr(caret + 2, close - caret - 2)));
    }
    auto caret = s.find("^(");
    auto close = s.find(")*[", caret);
    if (caret == std::string::npos || close == std::string::npos || s.back() != ']')
        throw ParseError(sraw);
    long long base = std::stoll(s.substr(0, caret));
    if (base != F->p()) throw ParseError("scalar prime mismatch: " + sraw);
    long long w = parse_val(s.substr(caret + 2, close - caret - 2));
    std::string body = s.substr(close + 3, s.size() - close - 4);
    std::vector<uint16_t> dig;
    std::string cur;
    for (char c : body + ",") {
        if (c == ',') {
            if (!cur.empty()) dig.push_back((uint16_t)std::stoul(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (dig.empty() || dig[0] == 0) throw ParseError("digits not normalized: " + sraw);
    for (auto t : dig)
        if (t >= F->q()) throw ParseError("digit out of range: " + sraw);
    return from_digits(F, w, dig);
}

}  // namespace padicr
