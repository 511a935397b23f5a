#include "qci/quaternion.hpp"

#include <algorithm>
#include <numeric>

namespace qci {

namespace {

long long mod_pos(long long v, long long m) { return ((v % m) + m) % m; }

// Extended gcd: returns g and x,y with a*x + b*y = g.
long long ext_gcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) { x = 1; y = 0; return a; }
    long long x1, y1;
    long long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

} // namespace

GroupParams::GroupParams(int n, int max_n) {
    if (n < 2)
        throw InvalidN("GroupParams: n must be >= 2, got " + std::to_string(n));
    if (n > max_n)
        throw InvalidN("GroupParams: n = " + std::to_string(n) +
                       " exceeds the configured limit " + std::to_string(max_n));
    n_ = n;
    two_n_ = 2 * n;
    order_ = 4 * n;

    // Factor 2n; collect (p_i, k_i) with p_1 > ... > p_{s+1} = 2.
    long long m = two_n_;
    std::vector<PrimePart> parts;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            PrimePart part;
            part.prime = p;
            while (m % p == 0) { m /= p; part.exponent++; }
            part.power = 1;
            for (int i = 0; i < part.exponent; ++i) part.power *= p;
            parts.push_back(part);
        }
    }
    if (m > 1) {
        PrimePart part;
        part.prime = m;
        part.exponent = 1;
        part.power = m;
        parts.push_back(part);
    }
    std::sort(parts.begin(), parts.end(),
              [](const PrimePart& a, const PrimePart& b) { return a.prime > b.prime; });
    primes_ = std::move(parts);

    phi_two_n_ = 1;
    for (auto& part : primes_)
        phi_two_n_ *= (part.power / part.prime) * (part.prime - 1);

    // CRT units: e_i = 1 mod q_i, = 0 mod 2n/q_i.  Then a_i = a^{e_i}.
    for (auto& part : primes_) {
        long long rest = two_n_ / part.power;
        long long x, y;
        ext_gcd(rest, part.power, x, y);
        // rest*x = 1 mod q_i, and rest*x = 0 mod rest.
        part.crt_unit = mod_pos(rest * mod_pos(x, part.power), two_n_);
        part.part_gen_exp = static_cast<int>(part.crt_unit);
    }

    // Cached tables over element indices.
    mul_table_.resize(static_cast<size_t>(order_) * order_);
    inv_table_.resize(order_);
    order_table_.resize(order_);
    for (int g = 0; g < order_; ++g) {
        QElem ge = element_at(g);
        for (int h = 0; h < order_; ++h) {
            QElem he = element_at(h);
            QElem prod;
            if (!ge.has_b) {
                prod = QElem{static_cast<int>(mod_pos(ge.exp_a + he.exp_a, two_n_)), he.has_b};
            } else if (!he.has_b) {
                prod = QElem{static_cast<int>(mod_pos(ge.exp_a - he.exp_a, two_n_)), true};
            } else {
                prod = QElem{static_cast<int>(mod_pos(ge.exp_a - he.exp_a + n_, two_n_)), false};
            }
            mul_table_[g * order_ + h] = index_of(prod);
        }
        QElem inv = ge.has_b ? QElem{static_cast<int>(mod_pos(ge.exp_a + n_, two_n_)), true}
                             : QElem{static_cast<int>(mod_pos(-ge.exp_a, two_n_)), false};
        inv_table_[g] = index_of(inv);
    }
    for (int g = 0; g < order_; ++g) {
        int cur = g, ord = 1;
        while (cur != 0) { cur = mul_table_[cur * order_ + g]; ord++; }
        order_table_[g] = ord;
    }
}

std::string GroupParams::to_string(QElem g) const {
    std::string s = "a^" + std::to_string(mod_pos(g.exp_a, two_n_));
    if (g.has_b) s += "*b";
    return s;
}

QElem GroupParams::parse_element(const std::string& token) const {
    std::string t;
    for (char c : token)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw ParseError("empty element token");

    bool has_b = false;
    long long exp = 0;
    size_t pos = 0;
    if (t == "1") return identity();
    if (t[pos] == 'a') {
        ++pos;
        if (pos < t.size() && t[pos] == '^') {
            ++pos;
            size_t start = pos;
            if (pos < t.size() && (t[pos] == '-' || t[pos] == '+')) ++pos;
            while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
            if (pos == start) throw ParseError("bad exponent in '" + token + "'");
            exp = std::stoll(t.substr(start, pos - start));
        } else {
            exp = 1;
        }
        if (pos < t.size()) {
            if (t[pos] != '*' || pos + 1 >= t.size() || t[pos + 1] != 'b' || pos + 2 != t.size())
                throw ParseError("bad element token '" + token + "'");
            has_b = true;
        }
    } else if (t[pos] == 'b' && t.size() == 1) {
        has_b = true;
    } else {
        throw ParseError("bad element token '" + token + "'");
    }
    return QElem{static_cast<int>(mod_pos(exp, two_n_)), has_b};
}

QElem q_mul(QElem g, QElem h, const GroupParams& p) {
    return p.element_at(p.mul_idx(p.index_of(g), p.index_of(h)));
}

QElem q_inv(QElem g, const GroupParams& p) {
    return p.element_at(p.inv_idx(p.index_of(g)));
}

int q_order(QElem g, const GroupParams& p) {
    return p.order_of_idx(p.index_of(g));
}

PartDecomposition part_decompose(QElem x, const GroupParams& p) {
    if (x.has_b)
        throw PreconditionFailed("part_decompose: element lies outside <a>");
    PartDecomposition d;
    d.parts.reserve(p.primes().size());
    for (const auto& part : p.primes()) {
        long long e = (static_cast<long long>(x.exp_a) * part.crt_unit) % p.two_n();
        d.parts.push_back(static_cast<int>(e));
    }
    return d;
}

QElem part_recombine(const PartDecomposition& d, const GroupParams& p) {
    long long e = 0;
    for (int part : d.parts) e += part;
    return p.a_pow(e);
}

QElem unique_involution(const GroupParams& p) { return QElem{p.n(), false}; }

} // namespace qci
