#include "multcode/gf.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <map>
#include <mutex>

namespace multcode {
namespace detail {

uint32_t PrimeFieldRep::inv_of(uint32_t v) const {
    if (!inv_tab.empty()) return inv_tab[v];
    // extended Euclid on integers
    int64_t t = 0, new_t = 1;
    int64_t r = q, new_r = v;
    while (new_r != 0) {
        int64_t quot = r / new_r;
        int64_t tmp = t - quot * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - quot * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += q;
    return static_cast<uint32_t>(t);
}

}  // namespace detail

namespace {

using detail::ExtFieldRep;
using detail::PrimeFieldRep;

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::mutex g_pf_mutex;
std::map<uint32_t, std::weak_ptr<const PrimeFieldRep>>& pf_registry() {
    static std::map<uint32_t, std::weak_ptr<const PrimeFieldRep>> reg;
    return reg;
}

std::mutex g_xf_mutex;
std::map<std::pair<uint32_t, std::vector<uint32_t>>, std::weak_ptr<const ExtFieldRep>>& xf_registry() {
    static std::map<std::pair<uint32_t, std::vector<uint32_t>>, std::weak_ptr<const ExtFieldRep>> reg;
    return reg;
}

std::shared_ptr<const PrimeFieldRep> make_prime_rep(uint32_t q) {
    if (q < 2 || q >= (1u << 20) || !is_prime_u32(q)) {
        throw std::invalid_argument("PrimeField: modulus " + std::to_string(q) +
                                    " must be a prime below 2^20");
    }
    std::lock_guard<std::mutex> lk(g_pf_mutex);
    auto& slot = pf_registry()[q];
    if (auto existing = slot.lock()) return existing;

    auto rep = std::make_shared<PrimeFieldRep>();
    rep->q = q;
    rep->barrett = static_cast<uint64_t>((static_cast<unsigned __int128>(1) << 64) / q);
    if (q <= detail::kInvTableCap) {
        rep->inv_tab.assign(q, 0);
        for (uint32_t v = 1; v < q; ++v) {
            // Fermat powering is fine at construction time.
            uint64_t b = v, e = q - 2, r = 1;
            while (e) {
                if (e & 1) r = r * b % q;
                b = b * b % q;
                e >>= 1;
            }
            rep->inv_tab[v] = static_cast<uint32_t>(r);
        }
    }
    slot = rep;
    return rep;
}

// ---- dense polynomial arithmetic over F_q on digit vectors (low-to-high) ----

using Digits = std::vector<uint32_t>;

void poly_trim(Digits& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a * b mod f, f monic of degree m; operands have degree < m.
Digits poly_mulmod(const Digits& a, const Digits& b, const Digits& f, uint32_t q) {
    const size_t m = f.size() - 1;
    std::vector<uint64_t> prod(2 * m, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) prod[i + j] += static_cast<uint64_t>(a[i]) * b[j];
    }
    for (size_t k = 2 * m; k-- > m;) {
        uint64_t c = prod[k] % q;
        prod[k] = 0;
        if (c == 0) continue;
        // X^k = X^{k-m} * (X^m mod f); X^m mod f = -f[0..m-1]
        for (size_t j = 0; j < m; ++j) {
            uint64_t neg = (q - f[j]) % q;
            prod[k - m + j] += c * neg;
        }
    }
    Digits out(m, 0);
    for (size_t j = 0; j < m; ++j) out[j] = static_cast<uint32_t>(prod[j] % q);
    poly_trim(out);
    return out;
}

Digits poly_powmod(Digits base, uint64_t e, const Digits& f, uint32_t q) {
    Digits acc{1 % q};
    poly_trim(acc);
    while (e) {
        if (e & 1) acc = poly_mulmod(acc, base, f, q);
        base = poly_mulmod(base, base, f, q);
        e >>= 1;
    }
    return acc;
}

Digits poly_sub(Digits a, const Digits& b, uint32_t q) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t j = 0; j < b.size(); ++j) a[j] = (a[j] + q - b[j]) % q;
    poly_trim(a);
    return a;
}

// remainder of a mod b, b nonzero
Digits poly_rem(Digits a, const Digits& b, uint32_t q, const PrimeFieldRep& rep) {
    poly_trim(a);
    const size_t db = b.size() - 1;
    const uint32_t lead_inv = rep.inv_of(b.back());
    while (a.size() >= b.size() && !a.empty()) {
        uint32_t factor = static_cast<uint32_t>(static_cast<uint64_t>(a.back()) * lead_inv % q);
        size_t shift = a.size() - b.size();
        for (size_t j = 0; j <= db; ++j) {
            uint64_t sub = static_cast<uint64_t>(factor) * b[j] % q;
            a[shift + j] = static_cast<uint32_t>((a[shift + j] + q - sub) % q);
        }
        poly_trim(a);
    }
    return a;
}

Digits poly_gcd(Digits a, Digits b, uint32_t q, const PrimeFieldRep& rep) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        Digits r = poly_rem(a, b, q, rep);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::vector<size_t> distinct_prime_factors(size_t m) {
    std::vector<size_t> out;
    for (size_t p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        out.push_back(p);
        while (m % p == 0) m /= p;
    }
    if (m > 1) out.push_back(m);
    return out;
}

bool rabin_irreducible(const Digits& f, uint32_t q, const PrimeFieldRep& rep) {
    const size_t m = f.size() - 1;
    if (m == 0) return false;
    if (m == 1) return true;
    Digits x{0, 1};
    // frob[k-1] = X^{q^k} mod f
    std::vector<Digits> frob;
    Digits cur = x;
    for (size_t k = 1; k <= m; ++k) {
        cur = poly_powmod(cur, q, f, q);
        frob.push_back(cur);
    }
    if (frob[m - 1] != x) return false;  // X^{q^m} == X required
    for (size_t p : distinct_prime_factors(m)) {
        Digits g = poly_gcd(poly_sub(frob[m / p - 1], x, q), f, q, rep);
        if (g.size() > 1) return false;
    }
    return true;
}

std::shared_ptr<const ExtFieldRep> make_ext_rep(std::shared_ptr<const PrimeFieldRep> base,
                                                std::vector<uint32_t> modulus) {
    const uint32_t q = base->q;
    if (modulus.size() < 2 || modulus.back() != 1) {
        throw std::invalid_argument("ExtField: modulus must be monic of degree >= 1");
    }
    for (uint32_t c : modulus)
        if (c >= q) throw std::invalid_argument("ExtField: modulus coefficient out of range");
    const uint32_t m = static_cast<uint32_t>(modulus.size() - 1);
    if (!rabin_irreducible(modulus, q, *base)) {
        throw std::invalid_argument("ExtField: modulus is not irreducible over F_" + std::to_string(q));
    }
    const uint64_t n = pow_u64_checked(q, m, "ExtField size");
    if (n > detail::kMaxExtSize) {
        throw CapacityError("ExtField: q^m = " + std::to_string(n) + " exceeds the supported bound " +
                            std::to_string(detail::kMaxExtSize));
    }

    std::lock_guard<std::mutex> lk(g_xf_mutex);
    auto key = std::make_pair(q, modulus);
    auto& slot = xf_registry()[key];
    if (auto existing = slot.lock()) return existing;

    auto rep = std::make_shared<ExtFieldRep>();
    rep->base = base;
    rep->base_q = q;
    rep->deg = m;
    rep->n = n;
    rep->modulus = modulus;

    // X^{m+k} mod f for k = 0..m-2
    rep->xpow_red.assign(static_cast<size_t>(m > 1 ? m - 1 : 0) * m, 0);
    if (m > 1) {
        std::vector<uint32_t> row(m, 0);
        for (uint32_t j = 0; j < m; ++j) row[j] = (q - modulus[j]) % q;  // X^m mod f
        for (uint32_t k = 0;; ++k) {
            std::copy(row.begin(), row.end(), rep->xpow_red.begin() + static_cast<size_t>(k) * m);
            if (k + 1 >= m - 1) break;
            // multiply by X and reduce
            uint32_t top = row[m - 1];
            for (uint32_t j = m; j-- > 1;) row[j] = row[j - 1];
            row[0] = 0;
            if (top) {
                for (uint32_t j = 0; j < m; ++j) {
                    uint64_t add = static_cast<uint64_t>(top) * ((q - modulus[j]) % q);
                    row[j] = static_cast<uint32_t>((row[j] + add) % q);
                }
            }
        }
    }

    rep->tables = false;  // generic paths while the tables are being filled
    if (n <= detail::kExtTableCap) {
        std::vector<uint16_t> mul_tab(n * n, 0), add_tab(n * n, 0);
        for (uint64_t a = 0; a < n; ++a) {
            for (uint64_t b = a; b < n; ++b) {
                uint16_t s = static_cast<uint16_t>(rep->add_idx(a, b));
                add_tab[a * n + b] = s;
                add_tab[b * n + a] = s;
                uint16_t p = static_cast<uint16_t>(rep->mul_idx_generic(a, b));
                mul_tab[a * n + b] = p;
                mul_tab[b * n + a] = p;
            }
        }
        rep->mul_tab = std::move(mul_tab);
        rep->add_tab = std::move(add_tab);
        rep->tables = true;
        rep->inv_tab.assign(n, 0);
        for (uint64_t a = 1; a < n; ++a) {
            rep->inv_tab[a] = static_cast<uint32_t>(rep->pow_idx(a, n - 2));
        }
        rep->trace_tab.assign(n, 0);
        for (uint64_t a = 0; a < n; ++a) rep->trace_tab[a] = rep->trace_idx_generic(a);
    }

    slot = rep;
    return rep;
}

}  // namespace

namespace detail {

void ExtFieldRep::digits_of(uint64_t idx, uint32_t* out) const {
    for (uint32_t k = 0; k < deg; ++k) {
        out[k] = static_cast<uint32_t>(idx % base_q);
        idx /= base_q;
    }
}

uint64_t ExtFieldRep::index_of_digits(const uint32_t* d) const {
    uint64_t idx = 0;
    for (uint32_t k = deg; k-- > 0;) idx = idx * base_q + d[k];
    return idx;
}

uint64_t ExtFieldRep::add_idx(uint64_t a, uint64_t b) const {
    if (tables && !add_tab.empty()) return add_tab[a * n + b];
    uint32_t da[32], db[32];
    digits_of(a, da);
    digits_of(b, db);
    for (uint32_t k = 0; k < deg; ++k) {
        da[k] += db[k];
        if (da[k] >= base_q) da[k] -= base_q;
    }
    return index_of_digits(da);
}

uint64_t ExtFieldRep::neg_idx(uint64_t a) const {
    uint32_t da[32];
    digits_of(a, da);
    for (uint32_t k = 0; k < deg; ++k) da[k] = da[k] ? base_q - da[k] : 0;
    return index_of_digits(da);
}

uint64_t ExtFieldRep::sub_idx(uint64_t a, uint64_t b) const { return add_idx(a, neg_idx(b)); }

uint64_t ExtFieldRep::mul_idx(uint64_t a, uint64_t b) const {
    if (tables) return mul_tab[a * n + b];
    return mul_idx_generic(a, b);
}

uint64_t ExtFieldRep::mul_idx_generic(uint64_t a, uint64_t b) const {
    uint32_t da[32], db[32];
    digits_of(a, da);
    digits_of(b, db);
    uint64_t prod[63] = {0};
    for (uint32_t i = 0; i < deg; ++i) {
        if (da[i] == 0) continue;
        for (uint32_t j = 0; j < deg; ++j) prod[i + j] += static_cast<uint64_t>(da[i]) * db[j];
    }
    for (uint32_t k = 2 * deg - 1; k-- > deg;) {
        uint64_t c = prod[k] % base_q;
        prod[k] = 0;
        if (c == 0) continue;
        const uint32_t* red = &xpow_red[static_cast<size_t>(k - deg) * deg];
        for (uint32_t j = 0; j < deg; ++j) prod[j] += c * red[j];
    }
    uint32_t out[32];
    for (uint32_t k = 0; k < deg; ++k) out[k] = static_cast<uint32_t>(prod[k] % base_q);
    return index_of_digits(out);
}

uint64_t ExtFieldRep::pow_idx(uint64_t a, uint64_t e) const {
    uint64_t acc = 1 % base_q, b = a;
    while (e) {
        if (e & 1) acc = mul_idx(acc, b);
        b = mul_idx(b, b);
        e >>= 1;
    }
    return acc;
}

uint64_t ExtFieldRep::inv_idx(uint64_t a) const {
    if (tables) return inv_tab[a];
    return inv_idx_generic(a);
}

uint64_t ExtFieldRep::inv_idx_generic(uint64_t a) const {
    // extended Euclid in F_q[X] against the modulus
    Digits r0(modulus.begin(), modulus.end());
    Digits r1(deg, 0);
    {
        uint32_t da[32];
        digits_of(a, da);
        for (uint32_t k = 0; k < deg; ++k) r1[k] = da[k];
        poly_trim(r1);
    }
    Digits t0, t1{1 % base_q};
    poly_trim(t1);
    const uint32_t q = base_q;
    while (!r1.empty()) {
        // divide r0 by r1
        Digits quot;
        Digits rem = r0;
        poly_trim(rem);
        const uint32_t lead_inv = base->inv_of(r1.back());
        if (rem.size() >= r1.size()) quot.assign(rem.size() - r1.size() + 1, 0);
        while (rem.size() >= r1.size() && !rem.empty()) {
            uint32_t factor = static_cast<uint32_t>(static_cast<uint64_t>(rem.back()) * lead_inv % q);
            size_t shift = rem.size() - r1.size();
            quot[shift] = factor;
            for (size_t j = 0; j < r1.size(); ++j) {
                uint64_t sub = static_cast<uint64_t>(factor) * r1[j] % q;
                rem[shift + j] = static_cast<uint32_t>((rem[shift + j] + q - sub) % q);
            }
            poly_trim(rem);
        }
        // t_{k+1} = t0 - quot * t1
        Digits qt(quot.size() + t1.size(), 0);
        for (size_t i = 0; i < quot.size(); ++i) {
            if (quot[i] == 0) continue;
            for (size_t j = 0; j < t1.size(); ++j) {
                qt[i + j] = static_cast<uint32_t>((qt[i + j] + static_cast<uint64_t>(quot[i]) * t1[j]) % q);
            }
        }
        poly_trim(qt);
        Digits tn = poly_sub(t0, qt, q);
        t0 = std::move(t1);
        t1 = std::move(tn);
        r0 = std::move(r1);
        r1 = std::move(rem);
    }
    // r0 is the gcd (a constant, modulus irreducible); normalize t0 by it
    uint32_t g = r0.empty() ? 0 : r0[0];
    assert(g != 0);
    uint32_t ginv = base->inv_of(g);
    uint32_t out[32] = {0};
    for (size_t k = 0; k < t0.size() && k < deg; ++k)
        out[k] = static_cast<uint32_t>(static_cast<uint64_t>(t0[k]) * ginv % q);
    return index_of_digits(out);
}

uint32_t ExtFieldRep::trace_idx(uint64_t a) const {
    if (tables) return trace_tab[a];
    return trace_idx_generic(a);
}

uint32_t ExtFieldRep::trace_idx_generic(uint64_t a) const {
    uint64_t acc = a, y = a;
    for (uint32_t k = 1; k < deg; ++k) {
        y = pow_idx(y, base_q);
        acc = add_idx(acc, y);
    }
    assert(acc < base_q);  // trace lies in the base field
    return static_cast<uint32_t>(acc);
}

}  // namespace detail

PrimeField::PrimeField(uint32_t q) : rep_(make_prime_rep(q)) {}

ExtField::ExtField(const PrimeField& base, uint32_t degree) {
    auto coeffs = find_irreducible_coeffs(base, degree);
    std::vector<uint32_t> digits(coeffs.size());
    for (size_t k = 0; k < coeffs.size(); ++k) digits[k] = coeffs[k].value();
    rep_ = make_ext_rep(base.shared_rep(), std::move(digits));
}

ExtField::ExtField(const PrimeField& base, const std::vector<Fp>& monic_modulus) {
    std::vector<uint32_t> digits(monic_modulus.size());
    for (size_t k = 0; k < monic_modulus.size(); ++k) {
        if (monic_modulus[k].rep() != base.rep())
            throw FieldMismatchError("ExtField: modulus coefficients not over the base field");
        digits[k] = monic_modulus[k].value();
    }
    rep_ = make_ext_rep(base.shared_rep(), std::move(digits));
}

PrimeField ExtField::base() const { return PrimeField(rep_->base_q); }

ExtElem ExtField::embed(Fp x) const {
    if (x.modulus() != rep_->base_q) throw FieldMismatchError("embed: wrong base field");
    return ExtElem(x.value(), rep_.get());
}

ExtElem ExtField::from_coeffs(std::span<const Fp> coeffs) const {
    if (coeffs.size() != rep_->deg) throw std::invalid_argument("from_coeffs: need exactly m coefficients");
    uint32_t d[32];
    for (uint32_t k = 0; k < rep_->deg; ++k) {
        if (coeffs[k].modulus() != rep_->base_q) throw FieldMismatchError("from_coeffs: wrong base field");
        d[k] = coeffs[k].value();
    }
    return ExtElem(rep_->index_of_digits(d), rep_.get());
}

Fp ExtField::trace(const ExtElem& x) const {
    if (x.rep() != rep_.get()) throw FieldMismatchError("trace: foreign element");
    return Fp(rep_->trace_idx(x.index()), rep_->base.get());
}

std::vector<Fp> ExtField::modulus_coeffs() const {
    std::vector<Fp> out;
    out.reserve(rep_->modulus.size());
    for (uint32_t c : rep_->modulus) out.emplace_back(c, rep_->base.get());
    return out;
}

std::vector<Fp> ExtElem::coeffs() const {
    uint32_t d[32];
    f_->digits_of(idx_, d);
    std::vector<Fp> out;
    out.reserve(f_->deg);
    for (uint32_t k = 0; k < f_->deg; ++k) out.emplace_back(d[k], f_->base.get());
    return out;
}

Fp ExtElem::coeff(uint32_t k) const {
    if (k >= f_->deg) throw std::out_of_range("ExtElem::coeff");
    uint32_t d[32];
    f_->digits_of(idx_, d);
    return Fp(d[k], f_->base.get());
}

Fp trace(const ExtElem& x) {
    return Fp(x.rep()->trace_idx(x.index()), x.rep()->base.get());
}

bool is_irreducible(const PrimeField& field, const std::vector<uint32_t>& monic_coeffs) {
    if (monic_coeffs.size() < 2 || monic_coeffs.back() != 1) return false;
    return rabin_irreducible(monic_coeffs, field.modulus(), *field.rep());
}

std::vector<Fp> find_irreducible_coeffs(const PrimeField& field, uint32_t m) {
    if (m < 1) throw std::invalid_argument("find_irreducible: degree must be >= 1");
    const uint32_t q = field.modulus();
    if (m == 1) {
        // degree-1 polynomials are all irreducible; X itself is smallest
        return {field.zero(), field.one()};
    }
    const uint64_t total = pow_u64_checked(q, m, "find_irreducible scan");
    for (uint64_t n = 0; n < total; ++n) {
        std::vector<uint32_t> digits(m + 1, 0);
        uint64_t t = n;
        for (uint32_t k = 0; k < m; ++k) {
            digits[k] = static_cast<uint32_t>(t % q);
            t /= q;
        }
        digits[m] = 1;
        if (rabin_irreducible(digits, q, *field.rep())) {
            std::vector<Fp> out;
            out.reserve(m + 1);
            for (uint32_t c : digits) out.push_back(field.from_int(c));
            return out;
        }
    }
    throw std::logic_error("find_irreducible: no irreducible found (unreachable)");
}

uint64_t memory_cell_limit() {
    static const uint64_t limit = [] {
        if (const char* env = std::getenv("MULTCODE_MAX_CELLS")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<uint64_t>(v);
        }
        return static_cast<uint64_t>(100000000);  // 10^8
    }();
    return limit;
}

static_assert(FiniteFieldType<PrimeField>);
static_assert(FiniteFieldType<ExtField>);

}  // namespace multcode
