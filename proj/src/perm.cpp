#include "qci/perm.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace qci {

void BigCount::mul(uint64_t m) {
    if (saturated) return;
    if (m == 0) { value = 0; return; }
    unsigned __int128 limit = ~static_cast<unsigned __int128>(0);
    if (value > limit / m) { saturated = true; return; }
    value *= m;
}

uint64_t BigCount::as_u64() const {
    if (!fits_u64())
        throw CapExceeded("BigCount: value does not fit in 64 bits");
    return static_cast<uint64_t>(value);
}

std::string BigCount::str() const {
    if (saturated) return "overflow";
    if (value == 0) return "0";
    unsigned __int128 v = value;
    std::string out;
    while (v > 0) {
        out += static_cast<char>('0' + static_cast<int>(v % 10));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

Perm Perm::identity(int degree) {
    std::vector<uint16_t> img(degree);
    std::iota(img.begin(), img.end(), 0);
    return Perm(std::move(img));
}

bool Perm::is_identity() const {
    for (int v = 0; v < degree(); ++v)
        if (images[v] != v) return false;
    return true;
}

Perm Perm::then(const Perm& q) const {
    if (degree() != q.degree())
        throw DegreeMismatch("compose: degrees " + std::to_string(degree()) +
                             " vs " + std::to_string(q.degree()));
    std::vector<uint16_t> img(degree());
    for (int v = 0; v < degree(); ++v) img[v] = q.images[images[v]];
    return Perm(std::move(img));
}

Perm Perm::inverse() const {
    std::vector<uint16_t> img(degree());
    for (int v = 0; v < degree(); ++v) img[images[v]] = static_cast<uint16_t>(v);
    return Perm(std::move(img));
}

Perm Perm::pow(long long e) const {
    int n = degree();
    Perm base = *this;
    if (e < 0) { base = inverse(); e = -e; }
    Perm acc = Perm::identity(n);
    while (e > 0) {
        if (e & 1) acc = acc.then(base);
        base = base.then(base);
        e >>= 1;
    }
    return acc;
}

Perm Perm::conjugated_by(const Perm& g) const {
    return g.inverse().then(*this).then(g);
}

uint64_t Perm::order() const {
    std::vector<bool> seen(degree(), false);
    uint64_t ord = 1;
    for (int v = 0; v < degree(); ++v) {
        if (seen[v]) continue;
        uint64_t len = 0;
        int cur = v;
        while (!seen[cur]) { seen[cur] = true; cur = images[cur]; ++len; }
        ord = std::lcm(ord, len);
    }
    return ord;
}

Perm compose(const Perm& p, const Perm& q) { return p.then(q); }

size_t PermHash::operator()(const Perm& p) const {
    // FNV-1a over the image bytes
    uint64_t h = 1469598103934665603ull;
    for (uint16_t v : p.images) {
        h = (h ^ (v & 0xff)) * 1099511628211ull;
        h = (h ^ (v >> 8)) * 1099511628211ull;
    }
    return static_cast<size_t>(h);
}

PermGroup PermGroup::trivial(int degree) {
    PermGroup g;
    g.degree_ = degree;
    g.order_ = BigCount::one();
    g.elements_ = {Perm::identity(degree)};
    return g;
}

PermGroup PermGroup::from_generators(int degree, std::vector<Perm> gens, size_t cap) {
    PermGroup g;
    g.degree_ = degree;
    g.cap_ = cap;
    for (auto& p : gens)
        if (p.degree() != degree)
            throw DegreeMismatch("PermGroup: generator degree mismatch");
    g.generators_ = std::move(gens);
    return g;
}

PermGroup PermGroup::with_known_order(int degree, std::vector<Perm> gens,
                                      BigCount order, size_t cap) {
    PermGroup g = from_generators(degree, std::move(gens), cap);
    g.order_ = order;
    return g;
}

PermGroup PermGroup::from_elements(int degree, std::vector<Perm> elems) {
    PermGroup g;
    g.degree_ = degree;
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    std::unordered_set<Perm, PermHash> set(elems.begin(), elems.end());
    if (!set.count(Perm::identity(degree)))
        throw ConsistencyFailure("from_elements: identity missing");
    for (const auto& e : elems)
        if (!set.count(e.inverse()))
            throw ConsistencyFailure("from_elements: set not closed under inverse");
    // Closure under products is implied for a finite set closed under
    // inverse only if it is actually a subgroup; verify directly.
    for (const auto& e : elems)
        for (const auto& f : elems)
            if (!set.count(e.then(f)))
                throw ConsistencyFailure("from_elements: set not closed under product");
    g.generators_ = elems;
    g.order_ = BigCount::of(elems.size());
    g.elements_ = std::move(elems);
    return g;
}

void PermGroup::materialize() const {
    if (!elements_.empty()) return;
    if (order_ && !order_->fits_u64())
        throw CapExceeded("PermGroup: order too large to materialize");
    if (order_ && order_->as_u64() > cap_)
        throw CapExceeded("PermGroup: order " + order_->str() +
                          " exceeds materialization cap " + std::to_string(cap_));

    std::unordered_set<Perm, PermHash> seen;
    std::vector<Perm> frontier;
    Perm id = Perm::identity(degree_);
    seen.insert(id);
    frontier.push_back(id);
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const auto& e : frontier) {
            for (const auto& g : generators_) {
                Perm prod = e.then(g);
                if (seen.insert(prod).second) {
                    if (seen.size() > cap_)
                        throw CapExceeded("closure: exceeded cap " + std::to_string(cap_));
                    next.push_back(std::move(prod));
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<Perm> elems(seen.begin(), seen.end());
    std::sort(elems.begin(), elems.end());
    if (order_ && !order_->equals_u64(elems.size()))
        throw ConsistencyFailure("PermGroup: closure size " +
                                 std::to_string(elems.size()) +
                                 " disagrees with known order " + order_->str());
    order_ = BigCount::of(elems.size());
    elements_ = std::move(elems);
}

BigCount PermGroup::order() const {
    if (!order_) materialize();
    return *order_;
}

uint64_t PermGroup::order_u64() const { return order().as_u64(); }

const std::vector<Perm>& PermGroup::elements() const {
    materialize();
    return elements_;
}

bool PermGroup::contains(const Perm& p) const {
    const auto& elems = elements();
    return std::binary_search(elems.begin(), elems.end(), p);
}

PermGroup closure(const std::vector<Perm>& gens, size_t cap) {
    if (gens.empty())
        throw DegreeMismatch("closure: no generators (degree unknown)");
    PermGroup g = PermGroup::from_generators(gens[0].degree(), gens, cap);
    g.elements(); // force
    return g;
}

bool is_transitive(const PermGroup& g) {
    int n = g.degree();
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    std::vector<Perm> step = g.generators();
    for (const auto& gen : g.generators()) step.push_back(gen.inverse());
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& p : step) {
            int u = p[v];
            if (!seen[u]) { seen[u] = true; ++count; stack.push_back(u); }
        }
    }
    return count == n;
}

bool is_regular(const PermGroup& g) {
    if (!g.order().equals_u64(static_cast<uint64_t>(g.degree()))) return false;
    return is_transitive(g);
}

bool is_normal_in(const PermGroup& small, const PermGroup& big) {
    const auto& selems = small.elements();
    const auto& belems = big.elements();
    if (!std::includes(belems.begin(), belems.end(), selems.begin(), selems.end()))
        throw ContainmentViolated("is_normal_in: H is not contained in G");
    auto in_small = [&](const Perm& p) {
        return std::binary_search(selems.begin(), selems.end(), p);
    };
    for (const auto& g : big.generators())
        for (const auto& h : small.generators())
            if (!in_small(h.conjugated_by(g))) return false;
    // Re-verify over the full closure of the subgroup.
    for (const auto& g : big.generators())
        for (const auto& h : selems)
            if (!in_small(h.conjugated_by(g)))
                throw ConsistencyFailure("is_normal_in: generator check passed "
                                         "but closure check failed");
    return true;
}

PermGroup sylow_subgroup(const PermGroup& g, long long prime) {
    uint64_t n = g.order_u64();
    if (prime < 2 || n % static_cast<uint64_t>(prime) != 0)
        throw PrimeNotDivisor("sylow_subgroup: " + std::to_string(prime) +
                              " does not divide " + std::to_string(n));
    uint64_t target = 1;
    while (n % prime == 0) { n /= prime; target *= prime; }

    auto is_p_power = [&](uint64_t m) {
        while (m % prime == 0) m /= prime;
        return m == 1;
    };
    std::vector<Perm> p_elements;
    for (const auto& e : g.elements())
        if (is_p_power(e.order())) p_elements.push_back(e);

    // Grow a p-subgroup one element at a time.  Any maximal p-subgroup
    // reachable this way has full Sylow order, which is verified below.
    std::vector<Perm> current_gens;
    PermGroup current = PermGroup::trivial(g.degree());
    while (current.order_u64() < target) {
        bool extended = false;
        for (const auto& x : p_elements) {
            if (current.contains(x)) continue;
            std::vector<Perm> trial = current_gens;
            trial.push_back(x);
            PermGroup bigger = PermGroup::from_generators(g.degree(), trial,
                                                          target * 2);
            uint64_t m;
            try {
                m = bigger.order_u64();
            } catch (const CapExceeded&) {
                continue;
            }
            if (m > target || !is_p_power(m)) continue;
            current_gens = std::move(trial);
            current = std::move(bigger);
            extended = true;
            break;
        }
        if (!extended)
            throw ConsistencyFailure("sylow_subgroup: stuck below Sylow order");
    }
    if (current.order_u64() != target)
        throw ConsistencyFailure("sylow_subgroup: wrong final order");
    return current;
}

namespace {

std::vector<Perm> conjugate_set(const std::vector<Perm>& elems, const Perm& g) {
    std::vector<Perm> out;
    out.reserve(elems.size());
    for (const auto& e : elems) out.push_back(e.conjugated_by(g));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<uint64_t> order_multiset(const PermGroup& g) {
    std::vector<uint64_t> orders;
    for (const auto& e : g.elements()) orders.push_back(e.order());
    std::sort(orders.begin(), orders.end());
    return orders;
}

} // namespace

bool are_conjugate_subgroups(const PermGroup& h1, const PermGroup& h2,
                             const PermGroup& ambient) {
    const auto& amb = ambient.elements();
    auto contained = [&](const PermGroup& h) {
        const auto& he = h.elements();
        return std::includes(amb.begin(), amb.end(), he.begin(), he.end());
    };
    if (!contained(h1) || !contained(h2))
        throw ContainmentViolated("are_conjugate_subgroups: subgroup outside ambient");
    if (h1.order_u64() != h2.order_u64()) return false;
    if (order_multiset(h1) != order_multiset(h2)) return false;
    const auto& target = h2.elements();
    for (const auto& g : amb)
        if (conjugate_set(h1.elements(), g) == target) return true;
    return false;
}

std::optional<std::pair<Perm, Perm>> iso_to_quaternion(const PermGroup& h,
                                                       const GroupParams& p) {
    if (!h.order().equals_u64(static_cast<uint64_t>(p.order()))) return std::nullopt;
    const int two_n = p.two_n();
    const auto& elems = h.elements();
    for (const auto& x : elems) {
        if (x.order() != static_cast<uint64_t>(two_n)) continue;
        Perm xn = x.pow(p.n());
        Perm x_inv = x.inverse();
        for (const auto& y : elems) {
            if (y.then(y) != xn) continue;
            if (x.conjugated_by(y) != x_inv) continue;
            return std::make_pair(x, y);
        }
    }
    return std::nullopt;
}

Perm right_multiplication(QElem g, const GroupParams& p) {
    int n = p.order();
    int gi = p.index_of(g);
    std::vector<uint16_t> img(n);
    for (int v = 0; v < n; ++v) img[v] = static_cast<uint16_t>(p.mul_idx(v, gi));
    return Perm(std::move(img));
}

PermGroup right_regular_representation(const GroupParams& p) {
    std::vector<Perm> elems;
    elems.reserve(p.order());
    for (int g = 0; g < p.order(); ++g)
        elems.push_back(right_multiplication(p.element_at(g), p));
    return PermGroup::from_elements(p.order(), std::move(elems));
}

} // namespace qci
