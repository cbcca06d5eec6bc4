#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "padicr/errors.hpp"
#include "padicr/rational.hpp"

namespace padicr {

// F = Q_{p^f}(pi) with pi^e = p and e | p-1 (tame), E = F.  All conjugates of
// pi lie in F, so |Hom(F,F)| = ef = [F:Q_p].
struct FieldDescriptor {
    int p = 2;
    int f = 1;
    int e = 1;

    int d() const { return e * f; }
    long long q() const {
        long long r = 1;
        for (int i = 0; i < f; ++i) r *= p;
        return r;
    }
    friend bool operator==(const FieldDescriptor& a, const FieldDescriptor& b) {
        return a.p == b.p && a.f == b.f && a.e == b.e;
    }
    std::string str() const {
        return "(p=" + std::to_string(p) + ",f=" + std::to_string(f) + ",e=" + std::to_string(e) + ")";
    }
};

// sigma = Frobenius^frob_power on the unramified part, pi -> zeta_e^root_twist pi.
struct Embedding {
    int frob_power = 0;
    int root_twist = 0;
    bool is_identity() const { return frob_power == 0 && root_twist == 0; }
    friend bool operator==(const Embedding& a, const Embedding& b) {
        return a.frob_power == b.frob_power && a.root_twist == b.root_twist;
    }
};

// Canonical member of A_h: the pi-adic digit string of length h (digit t is a
// residue-field index, position t carries pi^t).  A_{h-1} -> A_h by appending 0.
struct CosetRep {
    std::vector<uint16_t> digits;

    int level() const { return (int)digits.size(); }
    int l_of() const {
        for (int t = level() - 1; t >= 0; --t)
            if (digits[t] != 0) return t + 1;
        return 0;
    }
    CosetRep truncated(int h) const {
        CosetRep r;
        r.digits.assign(digits.begin(), digits.begin() + h);
        return r;
    }
    CosetRep padded(int h) const {
        CosetRep r = *this;
        r.digits.resize(h, 0);
        return r;
    }
    CosetRep child(uint16_t d) const {
        CosetRep r = *this;
        r.digits.push_back(d);
        return r;
    }
    friend bool operator==(const CosetRep& a, const CosetRep& b) { return a.digits == b.digits; }
    friend bool operator<(const CosetRep& a, const CosetRep& b) {
        if (a.digits.size() != b.digits.size()) return a.digits.size() < b.digits.size();
        // counting order: most significant digit is the highest position
        for (int t = (int)a.digits.size() - 1; t >= 0; --t)
            if (a.digits[t] != b.digits[t]) return a.digits[t] < b.digits[t];
        return false;
    }
    std::string str() const {
        std::string s = "[";
        for (size_t i = 0; i < digits.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(digits[i]);
        }
        return s + "]";
    }
};

namespace flat {

// Truncated p-adic integer: base-p digits, least significant first, no
// trailing zeros, length capped at the field's zp length.  Represents a class
// mod p^B; subtraction wraps.
using Zp = std::vector<uint8_t>;

struct UElem {
    std::vector<Zp> b;  // f coords over Z_p in the basis 1, y, ..., y^{f-1}
};

struct RElem {
    std::vector<UElem> c;  // e coords over the unramified ring in the basis 1, pi, ..., pi^{e-1}
};

}  // namespace flat

class Scalar;

// Immutable per-field context: residue-field tables, Teichmuller lifts,
// Frobenius data and memo caches.  Create via Field::make; share by pointer.
class Field : public std::enable_shared_from_this<Field> {
  public:
    static std::shared_ptr<const Field> make(const FieldDescriptor& desc, int precision = 64);

    const FieldDescriptor& desc() const { return desc_; }
    int p() const { return desc_.p; }
    int f() const { return desc_.f; }
    int e() const { return desc_.e; }
    int d() const { return desc_.d(); }
    long long q() const { return q_; }
    int precision() const { return prec_; }  // working precision M, in pi digits
    int zp_len() const { return zp_len_; }

    // --- residue field F_q, elements as indices sum c_i p^i ---
    uint16_t fq_add(uint16_t a, uint16_t b) const;
    uint16_t fq_mul(uint16_t a, uint16_t b) const { return mul_tab_[(size_t)a * q_ + b]; }
    uint16_t fq_neg(uint16_t a) const { return neg_tab_[a]; }
    uint16_t fq_inv(uint16_t a) const;
    uint16_t fq_frob(uint16_t a, int j = 1) const;  // a^{p^j}
    uint16_t fq_pow(uint16_t a, long long n) const;
    uint16_t zeta_idx() const { return zeta_idx_; }  // element of F_p of exact order e

    // --- embeddings ---
    std::vector<Embedding> embeddings() const;
    std::vector<CosetRep> residue_system(int h) const;
    uint64_t pack_rep(const CosetRep& a) const;
    CosetRep unpack_rep(uint64_t key, int h) const;

    // --- flat arithmetic mod p^B (internal but exposed for the kernels) ---
    flat::Zp zp_from_u64(uint64_t v) const;
    flat::Zp zp_add(const flat::Zp& a, const flat::Zp& b) const;
    flat::Zp zp_sub(const flat::Zp& a, const flat::Zp& b) const;
    flat::Zp zp_mul(const flat::Zp& a, const flat::Zp& b) const;
    flat::Zp zp_mul_small(const flat::Zp& a, uint32_t m) const;
    flat::Zp zp_shift_up(const flat::Zp& a, int k) const;
    flat::Zp zp_shift_down(const flat::Zp& a, int k) const;  // requires divisibility
    int zp_val(const flat::Zp& a) const { return a.empty() ? -1 : first_nonzero(a); }

    flat::UElem u_zero() const;
    flat::UElem u_add(const flat::UElem& a, const flat::UElem& b) const;
    flat::UElem u_sub(const flat::UElem& a, const flat::UElem& b) const;
    flat::UElem u_mul(const flat::UElem& a, const flat::UElem& b) const;
    flat::UElem u_inv(const flat::UElem& a) const;
    flat::UElem u_frob(const flat::UElem& a) const;
    int u_val(const flat::UElem& a) const;  // p-adic valuation, -1 if zero mod p^B
    bool u_is_zero(const flat::UElem& a) const;
    flat::UElem teich_lift(uint16_t t) const { return teich_[t]; }

    flat::RElem r_zero() const;
    flat::RElem r_one() const;
    flat::RElem r_from_u(const flat::UElem& u) const;
    flat::RElem r_add(const flat::RElem& a, const flat::RElem& b) const;
    flat::RElem r_sub(const flat::RElem& a, const flat::RElem& b) const;
    flat::RElem r_neg(const flat::RElem& a) const;
    flat::RElem r_mul(const flat::RElem& a, const flat::RElem& b) const;
    flat::RElem r_mul_pi(const flat::RElem& a) const;
    flat::RElem r_div_pi(const flat::RElem& a) const;
    flat::RElem r_shift_pi(const flat::RElem& a, int k) const;
    flat::RElem r_inv(const flat::RElem& a) const;  // requires pi-valuation 0
    // pi-adic valuation; nullopt when zero mod the flat modulus.
    std::optional<long long> r_val(const flat::RElem& a) const;
    uint16_t r_residue(const flat::RElem& a) const;  // a mod pi, requires val 0 rep in coord 0
    bool r_equal(const flat::RElem& a, const flat::RElem& b) const;

  private:
    friend class Scalar;
    Field() = default;

    FieldDescriptor desc_;
    long long q_ = 2;
    int prec_ = 64;
    int zp_len_ = 66;

    std::vector<int> mbar_;                  // monic irreducible modulus over F_p (degree f, coeffs of 1..y^{f-1} plus implicit top)
    std::vector<uint16_t> mul_tab_;          // q*q
    std::vector<uint16_t> neg_tab_;          // q
    std::vector<uint16_t> inv_tab_;          // q
    std::vector<uint16_t> frob_tab_;         // q, x -> x^p
    uint16_t zeta_idx_ = 1;
    std::vector<flat::UElem> teich_;         // q Teichmuller lifts
    std::vector<std::vector<flat::UElem>> frob_y_pow_;  // [j][i] = (Frob^j y)^i, i < f

    // memo: monomial values at canonical coset representatives
    mutable std::mutex memo_mu_;
    mutable std::map<std::pair<std::pair<uint64_t, int>, std::vector<int>>, std::shared_ptr<const Scalar>> rep_monomial_memo_;

    static int first_nonzero(const flat::Zp& a) {
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i]) return (int)i;
        return -1;
    }
    void build_residue_tables();
    void build_teichmuller();
    void build_frobenius();
    flat::UElem u_from_coords(const std::vector<int>& coords) const;
    uint16_t idx_from_coords(const std::vector<int>& c) const;
    std::vector<int> coords_from_idx(uint16_t t) const;

  public:
    // memoized monomial value at a coset representative (internal hot path)
    const Scalar& rep_monomial(const CosetRep& a, const std::vector<int>& idx) const;
    // memoized small-integer scalars (binomials, factorials)
    const Scalar& int_scalar(long long v) const;
    // integer-coordinate lift of a residue index (the "standard" digit system,
    // used by the Volkenborn-style Haar moments)
    Scalar standard_lift(uint16_t t) const;

  private:
    mutable std::map<long long, std::shared_ptr<const Scalar>> int_scalar_memo_;
};

bool is_prime(long long n);

}  // namespace padicr
