#include "cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "config.hpp"
#include "errors.hpp"
#include "numtheory.hpp"

namespace branchcover {

namespace {

using QPoly = std::vector<Rational>;

int degree_of(const QPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[static_cast<size_t>(i)] != 0) return i;
    return -1;
}

// Reduces an arbitrary polynomial in z (constant term first) to the canonical
// representative modulo the n-th cyclotomic polynomial, using z^n = 1 first to
// fold large exponents, then monic long division.
QPoly reduce_mod_phi(QPoly poly, unsigned long long n) {
    const auto& phi = cyclotomic_polynomial(n);
    const size_t deg = phi.size() - 1; // = euler_phi(n)
    if (poly.size() > n) {
        QPoly folded(n, Rational(0));
        for (size_t i = 0; i < poly.size(); ++i) folded[i % n] += poly[i];
        poly = std::move(folded);
    }
    if (poly.size() < deg) poly.resize(deg, Rational(0));
    for (size_t i = poly.size(); i-- > deg;) {
        if (poly[i] == 0) continue;
        Rational c = poly[i];
        for (size_t j = 0; j <= deg; ++j)
            poly[i - deg + j] -= c * Rational(phi[j]);
    }
    poly.resize(deg, Rational(0));
    return poly;
}

// Exact division of integer polynomials; divisor must be monic and divide
// the dividend exactly (constant term first).
std::vector<Integer> exact_divide(std::vector<Integer> num,
                                  const std::vector<Integer>& den) {
    const size_t dn = num.size() - 1, dd = den.size() - 1;
    ensure(dn >= dd && den[dd] == 1, "exact_divide: bad divisor");
    std::vector<Integer> quot(dn - dd + 1, Integer(0));
    for (size_t i = dn + 1; i-- > dd;) {
        Integer c = num[i];
        quot[i - dd] = c;
        if (c != 0)
            for (size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    for (size_t k = 0; k < dd; ++k)
        ensure(num[k] == 0, "exact_divide: nonzero remainder");
    return quot;
}

// Polynomial division with remainder over Q (constant term first).
void divmod(const QPoly& num, const QPoly& den, QPoly& quot, QPoly& rem) {
    const int ddeg = degree_of(den);
    ensure(ddeg >= 0, "divmod: division by zero polynomial");
    rem = num;
    int ndeg = degree_of(rem);
    quot.assign(ndeg >= ddeg ? static_cast<size_t>(ndeg - ddeg) + 1 : 1,
                Rational(0));
    const Rational lead_inv = Rational(1) / den[static_cast<size_t>(ddeg)];
    while (ndeg >= ddeg) {
        Rational c = rem[static_cast<size_t>(ndeg)] * lead_inv;
        quot[static_cast<size_t>(ndeg - ddeg)] = c;
        for (int j = 0; j <= ddeg; ++j)
            rem[static_cast<size_t>(ndeg - ddeg + j)] -=
                c * den[static_cast<size_t>(j)];
        rem[static_cast<size_t>(ndeg)] = 0;
        ndeg = degree_of(rem);
    }
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
    const int da = degree_of(a), db = degree_of(b);
    if (da < 0 || db < 0) return QPoly{Rational(0)};
    QPoly out(static_cast<size_t>(da + db) + 1, Rational(0));
    for (int i = 0; i <= da; ++i) {
        if (a[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j <= db; ++j)
            out[static_cast<size_t>(i + j)] +=
                a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
    }
    return out;
}

QPoly poly_sub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return a;
}

void check_lcm_cap(unsigned long long l) {
    if (l > config::lcm_cap())
        throw resource_limit_error(
            "cyclotomic order " + std::to_string(l) +
            " exceeds the configured cap " + std::to_string(config::lcm_cap()));
}

Rational parse_rational_token(const std::string& tok) {
    require(!tok.empty(), "cyclotomic parse: empty coefficient");
    const size_t slash = tok.find('/');
    const std::string num = slash == std::string::npos ? tok : tok.substr(0, slash);
    const std::string den =
        slash == std::string::npos ? std::string("1") : tok.substr(slash + 1);
    auto all_digits = [](const std::string& s) {
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    require(all_digits(num) && all_digits(den),
            "cyclotomic parse: bad coefficient '" + tok + "'");
    Rational r{Integer(num), Integer(den)};
    require(r.get_den() != 0, "cyclotomic parse: zero denominator in '" + tok + "'");
    r.canonicalize();
    return r;
}

} // namespace

namespace {

// Nonzero terms (index, coefficient) of the n-th cyclotomic polynomial,
// cached; used by the integer fast-path reduction.  The parallel long-long
// copy backs an overflow-checked fast path.
struct SparsePhi {
    std::vector<std::pair<size_t, Integer>> big;
    bool small_ok = true;
    std::vector<std::pair<size_t, long long>> small;
};

const SparsePhi& sparse_phi(unsigned long long n) {
    static std::map<unsigned long long, SparsePhi> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    const auto& phi = cyclotomic_polynomial(n);
    SparsePhi sp;
    for (size_t i = 0; i < phi.size(); ++i) {
        if (phi[i] == 0) continue;
        sp.big.emplace_back(i, phi[i]);
        if (sp.small_ok && fits_longlong(phi[i]))
            sp.small.emplace_back(i, to_longlong(phi[i]));
        else
            sp.small_ok = false;
    }
    if (!sp.small_ok) sp.small.clear();
    return cache.emplace(n, std::move(sp)).first->second;
}

} // namespace

Cyclotomic Cyclotomic::from_exponent_vector(
    unsigned long long n, const std::vector<long long>& weights) {
    require(n >= 1, "from_exponent_vector: order must be positive");
    ensure(weights.size() == n, "from_exponent_vector: need one weight per power");
    check_lcm_cap(n);
    const auto& phi = cyclotomic_polynomial(n);
    const size_t deg = phi.size() - 1;
    const SparsePhi& sp = sparse_phi(n);
    const size_t width = n < deg ? deg : n;

    if (sp.small_ok) {
        // Machine-integer reduction with overflow checks; falls through to
        // the exact path on any overflow.
        std::vector<long long> poly(width, 0);
        std::copy(weights.begin(), weights.end(), poly.begin());
        bool overflow = false;
        for (size_t i = width; !overflow && i-- > deg;) {
            const long long c = poly[i];
            if (c == 0) continue;
            for (const auto& [j, coef] : sp.small) {
                long long prod, next;
                if (__builtin_mul_overflow(c, coef, &prod) ||
                    __builtin_sub_overflow(poly[i - deg + j], prod, &next)) {
                    overflow = true;
                    break;
                }
                poly[i - deg + j] = next;
            }
        }
        if (!overflow) {
            QPoly coeffs(deg);
            for (size_t i = 0; i < deg; ++i)
                coeffs[i] = Rational(static_cast<long>(poly[i]));
            Cyclotomic out(n, std::move(coeffs));
            out.normalize();
            return out;
        }
    }

    std::vector<Integer> poly(width, Integer(0));
    for (size_t i = 0; i < n; ++i) poly[i] = static_cast<long>(weights[i]);
    for (size_t i = poly.size(); i-- > deg;) {
        if (poly[i] == 0) continue;
        const Integer c = poly[i];
        for (const auto& [j, coef] : sp.big) poly[i - deg + j] -= c * coef;
    }
    QPoly coeffs(deg);
    for (size_t i = 0; i < deg; ++i) coeffs[i] = Rational(poly[i]);
    Cyclotomic out(n, std::move(coeffs));
    out.normalize();
    return out;
}

const std::vector<Integer>& cyclotomic_polynomial(unsigned long long n) {
    static std::map<unsigned long long, std::vector<Integer>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Compute Phi_d for every divisor d of n in increasing order via
    // Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e.
    for (unsigned long long d : divisors(n)) {
        if (cache.count(d)) continue;
        std::vector<Integer> num(d + 1, Integer(0));
        num[0] = -1;
        num[d] = 1;
        std::vector<Integer> cur = std::move(num);
        for (unsigned long long e : divisors(d))
            if (e < d) cur = exact_divide(cur, cache.at(e));
        ensure(cur.size() == euler_phi(d) + 1,
               "cyclotomic polynomial has wrong degree");
        cache.emplace(d, std::move(cur));
    }
    return cache.at(n);
}

Cyclotomic::Cyclotomic() : order_(1), coeffs_{Rational(0)} {}

Cyclotomic::Cyclotomic(unsigned long long order, std::vector<Rational> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {}

void Cyclotomic::normalize() {
    if (order_ == 1) return;
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return;
    Rational v = coeffs_.empty() ? Rational(0) : coeffs_[0];
    order_ = 1;
    coeffs_.assign(1, v);
}

Cyclotomic Cyclotomic::zero() { return Cyclotomic(); }

Cyclotomic Cyclotomic::one() { return from_integer(1); }

Cyclotomic Cyclotomic::from_rational(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    return Cyclotomic(1, {c});
}

Cyclotomic Cyclotomic::from_integer(long long v) {
    return from_rational(Rational(static_cast<long>(v)));
}

Cyclotomic Cyclotomic::root_of_unity(unsigned long long n, long long k) {
    require(n >= 1, "root_of_unity: order must be positive");
    check_lcm_cap(n);
    long long km = k % static_cast<long long>(n);
    if (km < 0) km += static_cast<long long>(n);
    unsigned long long kk = static_cast<unsigned long long>(km);
    const unsigned long long g = gcd_ull(kk, n); // gcd(0, n) = n
    const unsigned long long n2 = n / g, k2 = kk / g;
    if (n2 == 1) return one();
    QPoly poly(k2 + 1, Rational(0));
    poly[k2] = 1;
    Cyclotomic out(n2, reduce_mod_phi(std::move(poly), n2));
    out.normalize();
    return out;
}

Cyclotomic Cyclotomic::from_root_sum(
    unsigned long long n,
    const std::vector<std::pair<long long, Integer>>& terms) {
    require(n >= 1, "from_root_sum: order must be positive");
    check_lcm_cap(n);
    QPoly poly(n, Rational(0));
    for (const auto& [e, m] : terms) {
        long long em = e % static_cast<long long>(n);
        if (em < 0) em += static_cast<long long>(n);
        poly[static_cast<size_t>(em)] += Rational(m);
    }
    Cyclotomic out(n, reduce_mod_phi(std::move(poly), n));
    out.normalize();
    return out;
}

bool Cyclotomic::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

Rational Cyclotomic::rational_value() const {
    require(is_rational(), "value is not rational: " + render());
    return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

Cyclotomic Cyclotomic::lifted_to(unsigned long long m) const {
    ensure(m >= 1 && m % order_ == 0, "lifted_to: target order not a multiple");
    check_lcm_cap(m);
    if (m == order_) return *this;
    const unsigned long long step = m / order_;
    QPoly poly(m, Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        poly[(i * step) % m] += coeffs_[i];
    return Cyclotomic(m, reduce_mod_phi(std::move(poly), m));
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    const unsigned long long l = lcm_ull(order_, o.order_);
    check_lcm_cap(l);
    Cyclotomic a = lifted_to(l), b = o.lifted_to(l);
    for (size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    a.normalize();
    return a;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    const unsigned long long l = lcm_ull(order_, o.order_);
    check_lcm_cap(l);
    Cyclotomic a = lifted_to(l), b = o.lifted_to(l);
    if (l == 1) return from_rational(a.coeffs_[0] * b.coeffs_[0]);
    Cyclotomic out(l, reduce_mod_phi(poly_mul(a.coeffs_, b.coeffs_), l));
    out.normalize();
    return out;
}

Cyclotomic Cyclotomic::operator/(const Cyclotomic& o) const {
    return *this * o.inverse();
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    if (order_ == o.order_) return coeffs_ == o.coeffs_;
    const unsigned long long l = lcm_ull(order_, o.order_);
    check_lcm_cap(l);
    return lifted_to(l).coeffs_ == o.lifted_to(l).coeffs_;
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw division_by_zero_error("inverse of zero");
    if (order_ == 1) return from_rational(Rational(1) / coeffs_[0]);
    // Extended Euclid for gcd(a, Phi_n) over Q[x]; Phi_n is irreducible, so the
    // gcd is a nonzero constant g with u*a = g (mod Phi_n).
    const auto& phi_int = cyclotomic_polynomial(order_);
    QPoly r0(phi_int.size());
    for (size_t i = 0; i < phi_int.size(); ++i) r0[i] = Rational(phi_int[i]);
    QPoly r1 = coeffs_;
    QPoly u0{Rational(0)}, u1{Rational(1)};
    while (degree_of(r1) >= 0) {
        QPoly q, rem;
        divmod(r0, r1, q, rem);
        r0 = std::move(r1);
        r1 = std::move(rem);
        QPoly next_u = poly_sub(u0, poly_mul(q, u1));
        u0 = std::move(u1);
        u1 = std::move(next_u);
    }
    const int gdeg = degree_of(r0);
    ensure(gdeg == 0, "inverse: gcd with cyclotomic polynomial not constant");
    const Rational ginv = Rational(1) / r0[0];
    for (auto& c : u0) c *= ginv;
    Cyclotomic out(order_, reduce_mod_phi(std::move(u0), order_));
    out.normalize();
    return out;
}

Cyclotomic Cyclotomic::pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclotomic base = *this, acc = one();
    unsigned long long n = static_cast<unsigned long long>(e);
    while (n) {
        if (n & 1) acc = acc * base;
        if (n >>= 1) base = base * base;
    }
    return acc;
}

Cyclotomic Cyclotomic::galois(long long t) const {
    if (order_ == 1) return *this;
    long long tm = t % static_cast<long long>(order_);
    if (tm < 0) tm += static_cast<long long>(order_);
    const unsigned long long tt = static_cast<unsigned long long>(tm);
    require(gcd_ull(tt, order_) == 1,
            "galois: exponent " + std::to_string(t) +
                " is not coprime to the order " + std::to_string(order_));
    QPoly poly(order_, Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        poly[(i * tt) % order_] += coeffs_[i];
    Cyclotomic out(order_, reduce_mod_phi(std::move(poly), order_));
    out.normalize();
    return out;
}

Cyclotomic Cyclotomic::conjugate() const {
    if (order_ == 1) return *this;
    return galois(static_cast<long long>(order_) - 1);
}

std::string Cyclotomic::render() const {
    if (order_ == 1) return to_string(coeffs_[0]);
    std::string out;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        const Rational& c = coeffs_[i];
        if (c == 0) continue;
        const bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        a.canonicalize();
        std::string mono =
            i == 0 ? std::string()
                   : (i == 1 ? std::string("z") : "z^" + std::to_string(i));
        std::string body;
        if (mono.empty())
            body = to_string(a);
        else if (a == 1)
            body = mono;
        else
            body = to_string(a) + "*" + mono;
        if (first)
            out += (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
        first = false;
    }
    if (first) out = "0";
    return out + " (z = zeta_" + std::to_string(order_) + ")";
}

Cyclotomic Cyclotomic::parse(const std::string& text) {
    // Strip all spaces; the grammar is whitespace-insensitive.
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r') s += c;
    require(!s.empty(), "cyclotomic parse: empty input");

    unsigned long long order = 1;
    const std::string marker = "(z=zeta_";
    std::string body = s;
    const size_t mpos = s.find(marker);
    if (mpos != std::string::npos) {
        require(s.back() == ')', "cyclotomic parse: missing ')' after order");
        const std::string ord =
            s.substr(mpos + marker.size(), s.size() - mpos - marker.size() - 1);
        require(!ord.empty(), "cyclotomic parse: missing order after 'zeta_'");
        for (char c : ord)
            require(c >= '0' && c <= '9',
                    "cyclotomic parse: bad order '" + ord + "'");
        order = std::stoull(ord);
        require(order >= 1, "cyclotomic parse: order must be positive");
        body = s.substr(0, mpos);
    }
    require(!body.empty(), "cyclotomic parse: empty value");

    Cyclotomic acc = zero();
    size_t pos = 0;
    while (pos < body.size()) {
        int sign = 1;
        if (body[pos] == '+' || body[pos] == '-') {
            sign = body[pos] == '-' ? -1 : 1;
            ++pos;
        }
        size_t end = pos;
        while (end < body.size() && body[end] != '+' && body[end] != '-') ++end;
        const std::string term = body.substr(pos, end - pos);
        require(!term.empty(), "cyclotomic parse: empty term");
        pos = end;

        Rational coeff(1);
        long long expo = 0;
        const size_t zpos = term.find('z');
        if (zpos == std::string::npos) {
            coeff = parse_rational_token(term);
        } else {
            std::string cpart = term.substr(0, zpos);
            if (!cpart.empty()) {
                require(cpart.back() == '*',
                        "cyclotomic parse: expected '*' before z in '" + term + "'");
                coeff = parse_rational_token(cpart.substr(0, cpart.size() - 1));
            }
            std::string epart = term.substr(zpos + 1);
            if (!epart.empty()) {
                require(epart[0] == '^' && epart.size() > 1,
                        "cyclotomic parse: bad exponent in '" + term + "'");
                for (size_t i = 1; i < epart.size(); ++i)
                    require(epart[i] >= '0' && epart[i] <= '9',
                            "cyclotomic parse: bad exponent in '" + term + "'");
                expo = std::stoll(epart.substr(1));
            } else {
                expo = 1;
            }
        }
        Cyclotomic t = from_rational(sign < 0 ? Rational(-coeff) : coeff) *
                       root_of_unity(order, expo);
        acc = acc + t;
    }
    return acc;
}

nlohmann::ordered_json Cyclotomic::to_json() const {
    nlohmann::ordered_json j;
    j["order"] = order_;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : coeffs_) {
        nlohmann::ordered_json pair = nlohmann::ordered_json::array();
        const Integer num = c.get_num(), den = c.get_den();
        if (fits_longlong(num))
            pair.push_back(to_longlong(num));
        else
            pair.push_back(num.get_str());
        if (fits_longlong(den))
            pair.push_back(to_longlong(den));
        else
            pair.push_back(den.get_str());
        arr.push_back(std::move(pair));
    }
    j["coeffs"] = std::move(arr);
    return j;
}

Cyclotomic Cyclotomic::from_json(const nlohmann::json& j) {
    require(j.is_object() && j.contains("order") && j.contains("coeffs"),
            "cyclotomic json: need {order, coeffs}");
    require(j["order"].is_number_unsigned() || j["order"].is_number_integer(),
            "cyclotomic json: order must be an integer");
    const long long ord_ll = j["order"].get<long long>();
    require(ord_ll >= 1, "cyclotomic json: order must be positive");
    const unsigned long long order = static_cast<unsigned long long>(ord_ll);
    check_lcm_cap(order);
    require(j["coeffs"].is_array(), "cyclotomic json: coeffs must be an array");
    const size_t want = euler_phi(order);
    require(j["coeffs"].size() == want,
            "cyclotomic json: coeffs length must equal phi(order)");
    auto read_int = [](const nlohmann::json& v) -> Integer {
        if (v.is_number_integer() || v.is_number_unsigned())
            return Integer(std::to_string(v.get<long long>()));
        require(v.is_string(), "cyclotomic json: coefficient entries must be "
                               "integers or integer strings");
        const std::string s = v.get<std::string>();
        require(!s.empty(), "cyclotomic json: empty integer string");
        size_t start = s[0] == '-' ? 1 : 0;
        require(start < s.size(), "cyclotomic json: bad integer '" + s + "'");
        for (size_t i = start; i < s.size(); ++i)
            require(s[i] >= '0' && s[i] <= '9',
                    "cyclotomic json: bad integer '" + s + "'");
        return Integer(s);
    };
    QPoly coeffs;
    coeffs.reserve(want);
    for (const auto& entry : j["coeffs"]) {
        require(entry.is_array() && entry.size() == 2,
                "cyclotomic json: each coefficient must be [num, den]");
        Integer num = read_int(entry[0]), den = read_int(entry[1]);
        require(den != 0, "cyclotomic json: zero denominator");
        Rational r(num, den);
        r.canonicalize();
        coeffs.push_back(std::move(r));
    }
    Cyclotomic out(order, reduce_mod_phi(std::move(coeffs), order));
    out.normalize();
    return out;
}

} // namespace branchcover
