#pragma once

#include <mutex>

#include "padicr/wavelet.hpp"

namespace padicr {

// A distribution presented by its moments: (a, i) with n = a.level() realizes
//   integral over a + pi^n O_F of ((z-a)/pi^n)^i d mu.
// Additivity across coset refinement is validated, never assumed.
class MomentOracle {
  public:
    virtual ~MomentOracle() = default;
    virtual Scalar moment(const CosetRep& a, const MultiIndex& i) const = 0;
    virtual const std::shared_ptr<const Field>& field() const = 0;
    virtual int max_degree() const { return 1 << 20; }
    virtual BoundaryProfile caps() const { return BoundaryProfile::full(field()->d()); }
    virtual std::string name() const = 0;
};

// point evaluation at an exact point of O_F (a finite digit string)
class DiracOracle : public MomentOracle {
  public:
    DiracOracle(std::shared_ptr<const Field> F, const CosetRep& point, int max_degree = 8)
        : F_(std::move(F)), point_(point), max_degree_(max_degree) {}
    Scalar moment(const CosetRep& a, const MultiIndex& i) const override;
    const std::shared_ptr<const Field>& field() const override { return F_; }
    int max_degree() const override { return max_degree_; }
    std::string name() const override { return "dirac"; }

  private:
    std::shared_ptr<const Field> F_;
    CosetRep point_;
    int max_degree_;
};

// normalized Haar measure; moments from p-adically stabilizing finite Riemann
// sums with a digit-agreement stopping rule
class HaarOracle : public MomentOracle {
  public:
    explicit HaarOracle(std::shared_ptr<const Field> F, int target_digits = 16,
                        int max_degree = 8)
        : F_(std::move(F)), target_(target_digits), max_degree_(max_degree) {}
    Scalar moment(const CosetRep& a, const MultiIndex& i) const override;
    const std::shared_ptr<const Field>& field() const override { return F_; }
    int max_degree() const override { return max_degree_; }
    std::string name() const override { return "haar"; }
    // integral of w^i over O_F
    Scalar base_moment(const MultiIndex& i) const;

  private:
    std::shared_ptr<const Field> F_;
    int target_;
    int max_degree_;
    mutable std::mutex mu_;
    mutable std::map<MultiIndex, Scalar> memo_;
};

// file-backed table; absent entries are exactly zero
class TableOracle : public MomentOracle {
  public:
    TableOracle(std::shared_ptr<const Field> F, int max_degree)
        : F_(std::move(F)), max_degree_(max_degree) {}
    void set(const CosetRep& a, const MultiIndex& i, Scalar v) {
        tab_[{std::make_pair(F_->pack_rep(a), a.level()), i}] = std::move(v);
    }
    Scalar moment(const CosetRep& a, const MultiIndex& i) const override {
        auto it = tab_.find({std::make_pair(F_->pack_rep(a), a.level()), i});
        return it == tab_.end() ? Scalar::zero(F_) : it->second;
    }
    const std::shared_ptr<const Field>& field() const override { return F_; }
    int max_degree() const override { return max_degree_; }
    std::string name() const override { return "table"; }

  private:
    std::shared_ptr<const Field> F_;
    int max_degree_;
    std::map<std::pair<std::pair<uint64_t, int>, MultiIndex>, Scalar> tab_;
};

struct AdditivityReport {
    bool ok = true;
    int depth = 0;
    std::string violation;  // first failing (a, n, i) when !ok
};

AdditivityReport validate_additivity(const MomentOracle& mu, int depth);

// envelope of |moment| q^{-nr} over a in A_n, i in Y cap I_{<=N}, n <= depth
struct AvvReport {
    Rational r;
    int N = 0;
    int depth = 0;
    std::vector<AbsValue> envelope;  // index n
    AbsValue C_estimate;
    int argmax_n = 0;
    bool pass = false;            // no growth detected over the checked range
    bool non_increasing = false;  // envelope non-increasing beyond argmax
    std::string witness;          // (a, n, i) achieving C_estimate
};

AvvReport avv_check(const MomentOracle& mu, const Rational& r, int N, int depth,
                    ExecPolicy pol = default_policy());

Scalar pair(const MomentOracle& mu, const LocPolyFun& f);
Scalar extend_pair(const MomentOracle& mu, const WaveletCoeffs& c, const Rational& r);

struct DualNormEstimate {
    AbsValue lower;  // certified: achieved by the witness
    AbsValue upper;  // the pass-envelope; empirical, not a proof
    int depth = 0;
    bool pass = false;
    std::string witness;
};

DualNormEstimate dual_norm(const MomentOracle& mu, const Rational& r, int N, int depth,
                           ExecPolicy pol = default_policy());

}  // namespace padicr
