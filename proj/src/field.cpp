#include "padicr/field.hpp"

#include <algorithm>
#include <cassert>

#include "padicr/scalar.hpp"

namespace padicr {

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

namespace {

// F_p[y] helpers for the modulus search (coeff vectors, low degree first)
using Poly = std::vector<int>;

Poly poly_trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, int p) {
    std::vector<int> prod(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (size_t j = 0; j < b.size(); ++j)
                prod[i + j] = (int)((prod[i + j] + (long long)a[i] * b[j]) % p);
    int deg = (int)mod.size() - 1;
    for (int k = (int)prod.size() - 1; k >= deg; --k) {
        if (!prod[k]) continue;
        int c = prod[k];
        prod[k] = 0;
        for (int i = 0; i < deg; ++i)
            prod[k - deg + i] = ((prod[k - deg + i] - c * mod[i]) % p + p) % p;
    }
    prod.resize(deg);
    return prod;
}

Poly poly_powmod(Poly base, long long n, const Poly& mod, int p) {
    Poly r(mod.size() - 1, 0);
    if (r.empty()) r = {0};
    r[0] = 1;
    while (n) {
        if (n & 1) r = poly_mulmod(r, base, mod, p);
        base = poly_mulmod(base, base, mod, p);
        n >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, int p) {
    a = poly_trim(a);
    b = poly_trim(b);
    while (!b.empty()) {
        // a mod b
        int db = (int)b.size() - 1;
        int lead_inv = 1;
        for (int t = 1; t < p; ++t)
            if (t * b[db] % p == 1) { lead_inv = t; break; }
        while ((int)a.size() - 1 >= db && !a.empty()) {
            int da = (int)a.size() - 1;
            int c = (int)((long long)a[da] * lead_inv % p);
            for (int i = 0; i <= db; ++i)
                a[da - db + i] = ((a[da - db + i] - c * b[i]) % p + p) % p;
            a = poly_trim(a);
        }
        std::swap(a, b);
    }
    return a;
}

bool poly_irreducible(const Poly& mod, int p) {
    int f = (int)mod.size() - 1;
    Poly y = {0, 1};
    if (f == 1) return true;
    long long pf = 1;
    for (int i = 0; i < f; ++i) pf *= p;
    Poly yq = poly_powmod(y, pf, mod, p);
    Poly diff = yq;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    if (!poly_trim(diff).empty()) return false;
    for (int ell = 2; ell <= f; ++ell) {
        if (f % ell != 0 || !is_prime(ell)) continue;
        long long pk = 1;
        for (int i = 0; i < f / ell; ++i) pk *= p;
        Poly yk = poly_powmod(y, pk, mod, p);
        Poly dk = yk;
        dk.resize(std::max<size_t>(dk.size(), 2), 0);
        dk[1] = ((dk[1] - 1) % p + p) % p;
        dk = poly_trim(dk);
        if (dk.empty()) return false;
        Poly g = poly_gcd(mod, dk, p);
        if ((int)g.size() - 1 >= 1) return false;
    }
    return true;
}

}  // namespace

std::shared_ptr<const Field> Field::make(const FieldDescriptor& desc, int precision) {
    if (!is_prime(desc.p) || desc.p > 251)
        throw UnsupportedField("p must be a prime <= 251, got " + std::to_string(desc.p));
    if (desc.f < 1 || desc.e < 1) throw UnsupportedField("need f >= 1 and e >= 1");
    if ((desc.p - 1) % desc.e != 0)
        throw UnsupportedField("tameness requires e | p-1 for " + desc.str());
    if (desc.q() > 4096) throw UnsupportedField("residue field too large for desk scale");
    if (precision < 4) throw InvalidParameters("precision must be >= 4");

    auto F = std::shared_ptr<Field>(new Field());
    F->desc_ = desc;
    F->q_ = desc.q();
    F->prec_ = precision;
    F->zp_len_ = precision + 2;
    F->build_residue_tables();
    F->build_teichmuller();
    F->build_frobenius();
    return F;
}

void Field::build_residue_tables() {
    const int p = desc_.p, f = desc_.f;
    // smallest monic irreducible of degree f over F_p (lex order on low coeffs)
    if (f == 1) {
        mbar_ = {0};
    } else {
        std::vector<int> lo(f, 0);
        for (;;) {
            Poly mod(lo.begin(), lo.end());
            mod.push_back(1);
            if (poly_irreducible(mod, p)) {
                mbar_ = lo;
                break;
            }
            int i = 0;
            while (i < f && ++lo[i] == p) lo[i++] = 0;
            if (i == f) throw UnsupportedField("no irreducible modulus found");
        }
    }

    const long long q = q_;
    mul_tab_.assign((size_t)q * q, 0);
    neg_tab_.assign(q, 0);
    auto coords = [&](uint16_t t) { return coords_from_idx(t); };
    for (long long a = 0; a < q; ++a) {
        auto ca = coords((uint16_t)a);
        std::vector<int> nc(f);
        for (int i = 0; i < f; ++i) nc[i] = (p - ca[i]) % p;
        neg_tab_[a] = idx_from_coords(nc);
        for (long long b = 0; b <= a; ++b) {
            auto cb = coords((uint16_t)b);
            std::vector<int> prod(2 * f - 1, 0);
            for (int i = 0; i < f; ++i)
                if (ca[i])
                    for (int j = 0; j < f; ++j)
                        prod[i + j] = (int)((prod[i + j] + (long long)ca[i] * cb[j]) % p);
            for (int k = 2 * f - 2; k >= f; --k) {
                if (!prod[k]) continue;
                int c = prod[k];
                prod[k] = 0;
                for (int i = 0; i < f; ++i)
                    prod[k - f + i] = ((prod[k - f + i] - c * mbar_[i]) % p + p) % p;
            }
            prod.resize(f);
            uint16_t r = idx_from_coords(prod);
            mul_tab_[(size_t)a * q + b] = r;
            mul_tab_[(size_t)b * q + a] = r;
        }
    }
    inv_tab_.assign(q, 0);
    for (long long a = 1; a < q; ++a)
        inv_tab_[a] = fq_pow((uint16_t)a, q - 2);
    frob_tab_.assign(q, 0);
    for (long long a = 0; a < q; ++a)
        frob_tab_[a] = fq_pow((uint16_t)a, p);

    // zeta_e: smallest t in F_p^x of multiplicative order exactly e
    zeta_idx_ = 1;
    for (int t = 1; t < p; ++t) {
        int ord = 1;
        long long acc = t % p;
        while (acc != 1) { acc = acc * t % p; ++ord; }
        if (ord == desc_.e) { zeta_idx_ = (uint16_t)t; break; }
    }
}

uint16_t Field::fq_add(uint16_t a, uint16_t b) const {
    const int p = desc_.p, f = desc_.f;
    auto ca = coords_from_idx(a), cb = coords_from_idx(b);
    std::vector<int> c(f);
    for (int i = 0; i < f; ++i) c[i] = (ca[i] + cb[i]) % p;
    return idx_from_coords(c);
}

uint16_t Field::fq_inv(uint16_t a) const {
    if (a == 0) throw DivisionByZeroToPrecision("residue inverse of 0");
    return inv_tab_[a];
}

uint16_t Field::fq_frob(uint16_t a, int j) const {
    j %= desc_.f;
    if (j < 0) j += desc_.f;
    uint16_t r = a;
    for (int i = 0; i < j; ++i) r = frob_tab_[r];
    return r;
}

uint16_t Field::fq_pow(uint16_t a, long long n) const {
    uint16_t r = 1;
    uint16_t base = a;
    while (n) {
        if (n & 1) r = fq_mul(r, base);
        base = fq_mul(base, base);
        n >>= 1;
    }
    return r;
}

std::vector<int> Field::coords_from_idx(uint16_t t) const {
    std::vector<int> c(desc_.f);
    for (int i = 0; i < desc_.f; ++i) {
        c[i] = t % desc_.p;
        t = (uint16_t)(t / desc_.p);
    }
    return c;
}

uint16_t Field::idx_from_coords(const std::vector<int>& c) const {
    long long idx = 0, mult = 1;
    for (int i = 0; i < desc_.f; ++i) {
        idx += c[i] % desc_.p * mult;
        mult *= desc_.p;
    }
    return (uint16_t)idx;
}

// ---------------- Zp ----------------

flat::Zp Field::zp_from_u64(uint64_t v) const {
    flat::Zp r;
    while (v && (int)r.size() < zp_len_) {
        r.push_back((uint8_t)(v % desc_.p));
        v /= desc_.p;
    }
    return r;
}

flat::Zp Field::zp_add(const flat::Zp& a, const flat::Zp& b) const {
    flat::Zp r;
    r.reserve(std::max(a.size(), b.size()) + 1);
    int carry = 0;
    size_t n = std::max(a.size(), b.size());
    for (size_t i = 0; i < n && (int)i < zp_len_; ++i) {
        int s = carry + (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r.push_back((uint8_t)(s % desc_.p));
        carry = s / desc_.p;
    }
    if (carry && (int)r.size() < zp_len_) r.push_back((uint8_t)carry);
    while (!r.empty() && !r.back()) r.pop_back();
    return r;
}

flat::Zp Field::zp_sub(const flat::Zp& a, const flat::Zp& b) const {
    if (b.empty()) return a;
    flat::Zp r;
    int borrow = 0;
    for (int i = 0; i < zp_len_; ++i) {
        if ((size_t)i >= a.size() && (size_t)i >= b.size() && !borrow) break;
        int s = (int)((size_t)i < a.size() ? a[i] : 0) - (int)((size_t)i < b.size() ? b[i] : 0) - borrow;
        borrow = 0;
        if (s < 0) { s += desc_.p; borrow = 1; }
        r.push_back((uint8_t)s);
    }
    if (borrow) {
        // wrap mod p^B
        while ((int)r.size() < zp_len_) r.push_back(0);
        // subtracting the borrow from the (virtual) digit at B is dropped: already mod p^B
    }
    while (!r.empty() && !r.back()) r.pop_back();
    return r;
}

flat::Zp Field::zp_mul(const flat::Zp& a, const flat::Zp& b) const {
    if (a.empty() || b.empty()) return {};
    size_t la = std::min(a.size(), (size_t)zp_len_), lb = std::min(b.size(), (size_t)zp_len_);
    size_t n = std::min(la + lb, (size_t)zp_len_);
    std::vector<uint64_t> acc(n, 0);
    for (size_t i = 0; i < la; ++i) {
        if (!a[i]) continue;
        uint64_t ai = a[i];
        size_t jmax = std::min(lb, n - i);
        for (size_t j = 0; j < jmax; ++j) acc[i + j] += ai * b[j];
    }
    flat::Zp r(n);
    uint64_t carry = 0;
    for (size_t i = 0; i < n; ++i) {
        uint64_t s = acc[i] + carry;
        r[i] = (uint8_t)(s % desc_.p);
        carry = s / desc_.p;
    }
    while (!r.empty() && !r.back()) r.pop_back();
    return r;
}

flat::Zp Field::zp_mul_small(const flat::Zp& a, uint32_t m) const {
    if (a.empty() || m == 0) return {};
    flat::Zp r;
    r.reserve(a.size() + 2);
    uint64_t carry = 0;
    for (size_t i = 0; i < a.size() && (int)i < zp_len_; ++i) {
        uint64_t s = (uint64_t)a[i] * m + carry;
        r.push_back((uint8_t)(s % desc_.p));
        carry = s / desc_.p;
    }
    while (carry && (int)r.size() < zp_len_) {
        r.push_back((uint8_t)(carry % desc_.p));
        carry /= desc_.p;
    }
    while (!r.empty() && !r.back()) r.pop_back();
    return r;
}

flat::Zp Field::zp_shift_up(const flat::Zp& a, int k) const {
    if (a.empty() || k >= zp_len_) return {};
    flat::Zp r(std::min(a.size() + k, (size_t)zp_len_), 0);
    for (size_t i = 0; i < a.size() && i + k < (size_t)zp_len_; ++i) r[i + k] = a[i];
    while (!r.empty() && !r.back()) r.pop_back();
    return r;
}

flat::Zp Field::zp_shift_down(const flat::Zp& a, int k) const {
    if ((int)a.size() <= k) return {};
    for (int i = 0; i < k; ++i) assert(a[i] == 0 && "zp_shift_down: not divisible");
    return flat::Zp(a.begin() + k, a.end());
}

// ---------------- unramified ring ----------------

flat::UElem Field::u_zero() const {
    flat::UElem u;
    u.b.assign(desc_.f, {});
    return u;
}

flat::UElem Field::u_add(const flat::UElem& a, const flat::UElem& b) const {
    flat::UElem r = u_zero();
    for (int i = 0; i < desc_.f; ++i) r.b[i] = zp_add(a.b[i], b.b[i]);
    return r;
}

flat::UElem Field::u_sub(const flat::UElem& a, const flat::UElem& b) const {
    flat::UElem r = u_zero();
    for (int i = 0; i < desc_.f; ++i) r.b[i] = zp_sub(a.b[i], b.b[i]);
    return r;
}

flat::UElem Field::u_mul(const flat::UElem& a, const flat::UElem& b) const {
    const int f = desc_.f;
    if (f == 1) {
        flat::UElem r = u_zero();
        r.b[0] = zp_mul(a.b[0], b.b[0]);
        return r;
    }
    std::vector<flat::Zp> prod(2 * f - 1);
    for (int i = 0; i < f; ++i) {
        if (a.b[i].empty()) continue;
        for (int j = 0; j < f; ++j) {
            if (b.b[j].empty()) continue;
            prod[i + j] = zp_add(prod[i + j], zp_mul(a.b[i], b.b[j]));
        }
    }
    for (int k = 2 * f - 2; k >= f; --k) {
        if (prod[k].empty()) continue;
        for (int i = 0; i < f; ++i)
            if (mbar_[i])
                prod[k - f + i] = zp_sub(prod[k - f + i], zp_mul_small(prod[k], (uint32_t)mbar_[i]));
    }
    flat::UElem r = u_zero();
    for (int i = 0; i < f; ++i) r.b[i] = std::move(prod[i]);
    return r;
}

int Field::u_val(const flat::UElem& a) const {
    int v = -1;
    for (int i = 0; i < desc_.f; ++i) {
        int vi = zp_val(a.b[i]);
        if (vi >= 0 && (v < 0 || vi < v)) v = vi;
    }
    return v;
}

bool Field::u_is_zero(const flat::UElem& a) const {
    for (const auto& z : a.b)
        if (!z.empty()) return false;
    return true;
}

flat::UElem Field::u_from_coords(const std::vector<int>& coords) const {
    flat::UElem u = u_zero();
    for (int i = 0; i < desc_.f; ++i)
        if (coords[i]) u.b[i] = zp_from_u64((uint64_t)coords[i]);
    return u;
}

flat::UElem Field::u_inv(const flat::UElem& a) const {
    // residue of a must be invertible
    std::vector<int> c(desc_.f);
    for (int i = 0; i < desc_.f; ++i) c[i] = a.b[i].empty() ? 0 : a.b[i][0];
    uint16_t res = idx_from_coords(c);
    if (res == 0) throw DivisionByZeroToPrecision("non-unit in unramified inverse");
    flat::UElem r = u_from_coords(coords_from_idx(fq_inv(res)));
    flat::UElem two = u_zero();
    two.b[0] = zp_from_u64(2);
    // Newton: r <- r(2 - a r); doubles the p-adic agreement each step
    int steps = 1;
    for (int len = 1; len < zp_len_; len *= 2) ++steps;
    for (int s = 0; s <= steps; ++s) {
        flat::UElem ar = u_mul(a, r);
        flat::UElem corr = u_sub(two, ar);
        r = u_mul(r, corr);
    }
    return r;
}

flat::UElem Field::u_frob(const flat::UElem& a) const {
    if (desc_.f == 1) return a;
    flat::UElem r = u_zero();
    r.b[0] = a.b[0];
    for (int i = 1; i < desc_.f; ++i) {
        if (a.b[i].empty()) continue;
        const flat::UElem& yi = frob_y_pow_[1][i];
        for (int j = 0; j < desc_.f; ++j)
            r.b[j] = zp_add(r.b[j], zp_mul(a.b[i], yi.b[j]));
    }
    return r;
}

void Field::build_teichmuller() {
    teich_.assign(q_, u_zero());
    for (long long t = 1; t < q_; ++t) {
        flat::UElem u = u_from_coords(coords_from_idx((uint16_t)t));
        // iterate x -> x^q until stable; gains f digits per round
        for (int round = 0; round <= zp_len_ / desc_.f + 2; ++round) {
            flat::UElem next = u;
            for (int i = 0; i < desc_.f; ++i) {
                // p-th power via binary powering
                flat::UElem acc = u_from_coords([&] {
                    std::vector<int> o(desc_.f, 0);
                    o[0] = 1;
                    return o;
                }());
                flat::UElem base = next;
                int n = desc_.p;
                while (n) {
                    if (n & 1) acc = u_mul(acc, base);
                    base = u_mul(base, base);
                    n >>= 1;
                }
                next = acc;
            }
            bool same = true;
            for (int i = 0; i < desc_.f && same; ++i) same = (next.b[i] == u.b[i]);
            u = next;
            if (same) break;
        }
        teich_[t] = u;
    }
}

void Field::build_frobenius() {
    const int f = desc_.f;
    frob_y_pow_.assign(f, std::vector<flat::UElem>(f, u_zero()));
    auto one_u = u_from_coords([&] {
        std::vector<int> o(f, 0);
        o[0] = 1;
        return o;
    }());
    for (int j = 0; j < f; ++j) frob_y_pow_[j][0] = one_u;
    if (f == 1) return;

    // m(z) with the integer-lift coefficients of mbar_
    auto eval_m = [&](const flat::UElem& z) {
        flat::UElem acc = u_zero();
        flat::UElem zp = one_u;
        for (int i = 0; i < f; ++i) {
            if (mbar_[i]) acc = u_add(acc, [&] {
                flat::UElem t = zp;
                for (auto& c : t.b) c = zp_mul_small(c, (uint32_t)mbar_[i]);
                return t;
            }());
            zp = u_mul(zp, z);
        }
        return u_add(acc, zp);  // + z^f
    };
    auto eval_mprime = [&](const flat::UElem& z) {
        flat::UElem acc = u_zero();
        flat::UElem zp = one_u;
        for (int i = 1; i < f; ++i) {
            int c = (int)(((long long)i * mbar_[i]) % desc_.p);
            if (c) acc = u_add(acc, [&] {
                flat::UElem t = zp;
                for (auto& cc : t.b) cc = zp_mul_small(cc, (uint32_t)c);
                return t;
            }());
            zp = u_mul(zp, z);
        }
        flat::UElem top = zp;  // z^{f-1}
        for (auto& cc : top.b) cc = zp_mul_small(cc, (uint32_t)(f % desc_.p));
        return u_add(acc, top);
    };

    // Newton-lift the root of m congruent to ybar^p
    uint16_t y_idx = idx_from_coords([&] {
        std::vector<int> c(f, 0);
        c[1] = 1;
        return c;
    }());
    flat::UElem z = u_from_coords(coords_from_idx(frob_tab_[y_idx]));
    int steps = 1;
    for (int len = 1; len < zp_len_; len *= 2) ++steps;
    for (int s = 0; s <= steps + 1; ++s) {
        flat::UElem num = eval_m(z);
        if (u_is_zero(num)) break;
        flat::UElem den = u_inv(eval_mprime(z));
        z = u_sub(z, u_mul(num, den));
    }
    assert(u_is_zero(eval_m(z)) && "Frobenius lift failed");

    // frob_y_pow_[j][i] = (Frob^j y)^i
    flat::UElem fj = z;  // Frob^1 y
    for (int j = 1; j < f; ++j) {
        flat::UElem pw = one_u;
        for (int i = 1; i < f; ++i) {
            pw = u_mul(pw, fj);
            frob_y_pow_[j][i] = pw;
        }
        if (j + 1 < f) {
            // Frob^{j+1} y = Frob(Frob^j y), apply via frob_y_pow_[1]
            flat::UElem nxt = u_zero();
            nxt.b[0] = fj.b[0];
            for (int i = 1; i < f; ++i) {
                if (fj.b[i].empty()) continue;
                const flat::UElem& yi = frob_y_pow_[1][i];
                for (int k = 0; k < f; ++k)
                    nxt.b[k] = zp_add(nxt.b[k], zp_mul(fj.b[i], yi.b[k]));
            }
            fj = nxt;
        }
    }
}

// ---------------- full flat ring ----------------

flat::RElem Field::r_zero() const {
    flat::RElem r;
    r.c.assign(desc_.e, u_zero());
    return r;
}

flat::RElem Field::r_one() const {
    flat::RElem r = r_zero();
    r.c[0].b[0] = zp_from_u64(1);
    return r;
}

flat::RElem Field::r_from_u(const flat::UElem& u) const {
    flat::RElem r = r_zero();
    r.c[0] = u;
    return r;
}

flat::RElem Field::r_add(const flat::RElem& a, const flat::RElem& b) const {
    flat::RElem r = r_zero();
    for (int j = 0; j < desc_.e; ++j) r.c[j] = u_add(a.c[j], b.c[j]);
    return r;
}

flat::RElem Field::r_sub(const flat::RElem& a, const flat::RElem& b) const {
    flat::RElem r = r_zero();
    for (int j = 0; j < desc_.e; ++j) r.c[j] = u_sub(a.c[j], b.c[j]);
    return r;
}

flat::RElem Field::r_neg(const flat::RElem& a) const { return r_sub(r_zero(), a); }

flat::RElem Field::r_mul(const flat::RElem& a, const flat::RElem& b) const {
    const int e = desc_.e;
    if (e == 1) {
        flat::RElem r = r_zero();
        r.c[0] = u_mul(a.c[0], b.c[0]);
        return r;
    }
    std::vector<flat::UElem> conv(2 * e - 1, u_zero());
    for (int i = 0; i < e; ++i) {
        if (u_is_zero(a.c[i])) continue;
        for (int j = 0; j < e; ++j) {
            if (u_is_zero(b.c[j])) continue;
            conv[i + j] = u_add(conv[i + j], u_mul(a.c[i], b.c[j]));
        }
    }
    flat::RElem r = r_zero();
    for (int k = 0; k < e; ++k) r.c[k] = conv[k];
    for (int k = e; k < 2 * e - 1; ++k) {
        // pi^k = p * pi^{k-e}
        flat::UElem t = conv[k];
        for (auto& z : t.b) z = zp_shift_up(z, 1);
        r.c[k - e] = u_add(r.c[k - e], t);
    }
    return r;
}

flat::RElem Field::r_mul_pi(const flat::RElem& a) const {
    flat::RElem r = r_zero();
    for (int j = 1; j < desc_.e; ++j) r.c[j] = a.c[j - 1];
    flat::UElem top = a.c[desc_.e - 1];
    for (auto& z : top.b) z = zp_shift_up(z, 1);
    r.c[0] = top;
    return r;
}

flat::RElem Field::r_div_pi(const flat::RElem& a) const {
    flat::RElem r = r_zero();
    for (int j = 0; j + 1 < desc_.e; ++j) r.c[j] = a.c[j + 1];
    flat::UElem low = a.c[0];
    for (auto& z : low.b) z = zp_shift_down(z, 1);
    r.c[desc_.e - 1] = low;
    return r;
}

flat::RElem Field::r_shift_pi(const flat::RElem& a, int k) const {
    flat::RElem r = a;
    for (int i = 0; i < k; ++i) r = r_mul_pi(r);
    for (int i = 0; i > k; --i) r = r_div_pi(r);
    return r;
}

std::optional<long long> Field::r_val(const flat::RElem& a) const {
    long long best = -1;
    for (int j = 0; j < desc_.e; ++j) {
        int uv = u_val(a.c[j]);
        if (uv < 0) continue;
        long long v = (long long)desc_.e * uv + j;
        if (best < 0 || v < best) best = v;
    }
    if (best < 0) return std::nullopt;
    return best;
}

uint16_t Field::r_residue(const flat::RElem& a) const {
    std::vector<int> c(desc_.f);
    for (int i = 0; i < desc_.f; ++i) c[i] = a.c[0].b[i].empty() ? 0 : a.c[0].b[i][0];
    return idx_from_coords(c);
}

bool Field::r_equal(const flat::RElem& a, const flat::RElem& b) const {
    for (int j = 0; j < desc_.e; ++j)
        for (int i = 0; i < desc_.f; ++i)
            if (a.c[j].b[i] != b.c[j].b[i]) return false;
    return true;
}

flat::RElem Field::r_inv(const flat::RElem& a) const {
    auto v = r_val(a);
    if (!v || *v != 0) throw DivisionByZeroToPrecision("flat inverse needs valuation 0");
    flat::RElem r = r_from_u(u_from_coords(coords_from_idx(fq_inv(r_residue(a)))));
    flat::RElem two = r_zero();
    two.c[0].b[0] = zp_from_u64(2);
    int steps = 1;
    for (long long len = 1; len < (long long)desc_.e * zp_len_; len *= 2) ++steps;
    for (int s = 0; s <= steps; ++s) r = r_mul(r, r_sub(two, r_mul(a, r)));
    return r;
}

// ---------------- embeddings / cosets ----------------

std::vector<Embedding> Field::embeddings() const {
    std::vector<Embedding> out;
    out.reserve(desc_.d());
    for (int j = 0; j < desc_.f; ++j)
        for (int k = 0; k < desc_.e; ++k) out.push_back(Embedding{j, k});
    return out;
}

std::vector<CosetRep> Field::residue_system(int h) const {
    if (h < 0) throw InvalidParameters("residue_system: h < 0");
    uint64_t count = 1;
    for (int i = 0; i < h; ++i) {
        if (count > (uint64_t)1 << 40) throw InvalidParameters("residue_system too large");
        count *= (uint64_t)q_;
    }
    std::vector<CosetRep> out;
    out.reserve(count);
    for (uint64_t n = 0; n < count; ++n) out.push_back(unpack_rep(n, h));
    return out;
}

uint64_t Field::pack_rep(const CosetRep& a) const {
    uint64_t key = 0, mult = 1;
    for (int t = 0; t < a.level(); ++t) {
        key += (uint64_t)a.digits[t] * mult;
        mult *= (uint64_t)q_;
    }
    return key;
}

CosetRep Field::unpack_rep(uint64_t key, int h) const {
    CosetRep r;
    r.digits.resize(h);
    for (int t = 0; t < h; ++t) {
        r.digits[t] = (uint16_t)(key % (uint64_t)q_);
        key /= (uint64_t)q_;
    }
    return r;
}

const Scalar& Field::rep_monomial(const CosetRep& a, const std::vector<int>& idx) const {
    auto key = std::make_pair(std::make_pair(pack_rep(a), a.level()), idx);
    {
        std::lock_guard<std::mutex> lock(memo_mu_);
        auto it = rep_monomial_memo_.find(key);
        if (it != rep_monomial_memo_.end()) return *it->second;
    }
    Scalar z = Scalar::from_rep(shared_from_this(), a);
    auto val = std::make_shared<Scalar>(monomial_eval(z, idx));
    std::lock_guard<std::mutex> lock(memo_mu_);
    auto [it, inserted] = rep_monomial_memo_.emplace(key, val);
    return *it->second;
}

Scalar Field::standard_lift(uint16_t t) const {
    if (t == 0) return Scalar::zero(shared_from_this());
    flat::RElem x = r_from_u(u_from_coords(coords_from_idx(t)));
    return Scalar::from_flat(shared_from_this(), x, (long long)e() * zp_len());
}

const Scalar& Field::int_scalar(long long v) const {
    {
        std::lock_guard<std::mutex> lock(memo_mu_);
        auto it = int_scalar_memo_.find(v);
        if (it != int_scalar_memo_.end()) return *it->second;
    }
    auto val = std::make_shared<Scalar>(Scalar::from_int(shared_from_this(), v));
    std::lock_guard<std::mutex> lock(memo_mu_);
    auto [it, inserted] = int_scalar_memo_.emplace(v, val);
    return *it->second;
}

}  // namespace padicr
