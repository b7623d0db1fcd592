#include "balk1/starpoly.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace balk1::starpoly {

namespace {

// Words are packed as (length << 40) | base-4 code, so that numeric order is degree
// first, then lexicographic. Larger keys are leading terms.
using Key = std::uint64_t;
constexpr int kMaxWordLength = 20;
constexpr Key kCodeMask = (Key{1} << 40) - 1;

Key encode(const std::vector<Letter>& w) {
    Key code = 0;
    for (Letter l : w) code = code * 4 + static_cast<Key>(l);
    return (static_cast<Key>(w.size()) << 40) | code;
}

std::vector<Letter> decode(Key k) {
    std::vector<Letter> w(static_cast<std::size_t>(k >> 40));
    Key code = k & kCodeMask;
    for (std::size_t i = w.size(); i-- > 0;) {
        w[i] = static_cast<Letter>(code & 3U);
        code >>= 2;
    }
    return w;
}

using Row = std::vector<std::pair<Key, GaussRational>>;  // strictly decreasing keys
using WorkRow = std::map<Key, GaussRational, std::greater<>>;

struct Candidate {
    std::size_t closed;  // index into the star closure
    Key left;
    Key right;
};

struct Echelon {
    std::vector<Candidate> candidates;
    std::vector<Row> rows;  // monic
    std::vector<std::size_t> origin;
    std::vector<GaussRational> scale;
    // basis_j = scale_j * candidate(origin_j) - sum_k w * basis_k over history_j
    std::vector<std::vector<std::pair<std::uint32_t, GaussRational>>> history;
    std::unordered_map<Key, std::uint32_t> pivot;
};

void subtract_scaled(WorkRow& work, const Row& row, const GaussRational& k) {
    for (const auto& [key, coeff] : row) {
        auto [it, inserted] = work.try_emplace(key, -(k * coeff));
        if (inserted) continue;
        it->second -= k * coeff;
        if (it->second.is_zero()) work.erase(it);
    }
}

Row candidate_row(const Candidate& cand, const std::vector<RelationIdeal::Closed>& closure) {
    const auto u = decode(cand.left);
    const auto v = decode(cand.right);
    Row row;
    for (const auto& [m, coeff] : closure[cand.closed].poly.terms()) {
        std::vector<Letter> w = u;
        w.insert(w.end(), m.word.begin(), m.word.end());
        w.insert(w.end(), v.begin(), v.end());
        row.emplace_back(encode(w), coeff);
    }
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    return row;
}

bool charge_homogeneous(const StarPoly& p, int& q) {
    bool first = true;
    for (const auto& [m, coeff] : p.terms()) {
        if (first) {
            q = m.charge();
            first = false;
        } else if (m.charge() != q) {
            return false;
        }
    }
    return true;
}

std::unique_ptr<Echelon> build_echelon(const std::vector<RelationIdeal::Closed>& closure, int bound,
                                       std::optional<int> target_charge, const MembershipOptions& opts) {
    auto ech = std::make_unique<Echelon>();

    // Words grouped by length and charge.
    const int max_len = bound;
    std::vector<std::vector<Key>> by_len(static_cast<std::size_t>(max_len + 1));
    by_len[0].push_back(encode({}));
    for (int len = 1; len <= max_len; ++len) {
        for (Key prev : by_len[static_cast<std::size_t>(len - 1)]) {
            const Key code = prev & kCodeMask;
            for (Key l = 0; l < 4; ++l)
                by_len[static_cast<std::size_t>(len)].push_back((static_cast<Key>(len) << 40) | (code * 4 + l));
        }
    }
    auto word_charge = [](Key k) {
        int q = 0;
        for (Letter l : decode(k)) q += charge(l);
        return q;
    };

    for (int total = 0; total <= bound; ++total) {
        for (std::size_t g = 0; g < closure.size(); ++g) {
            const StarPoly& poly = closure[g].poly;
            if (poly.is_zero()) continue;
            const int dg = poly.degree();
            const int free_len = total - dg;
            if (free_len < 0) continue;
            int qg = 0;
            const bool homogeneous = charge_homogeneous(poly, qg);
            for (int lu = 0; lu <= free_len; ++lu) {
                const int lv = free_len - lu;
                for (Key u : by_len[static_cast<std::size_t>(lu)]) {
                    const int qu = target_charge ? word_charge(u) : 0;
                    for (Key v : by_len[static_cast<std::size_t>(lv)]) {
                        if (target_charge && homogeneous && qu + word_charge(v) + qg != *target_charge) continue;
                        ech->candidates.push_back({g, u, v});
                        if (ech->candidates.size() > opts.max_rows)
                            throw PreconditionError("ideal_member: degree bound " + std::to_string(bound) +
                                                    " exceeds the configured ceiling of " +
                                                    std::to_string(opts.max_rows) + " candidate products");
                    }
                }
            }
        }
    }

    for (std::size_t c = 0; c < ech->candidates.size(); ++c) {
        const Row init = candidate_row(ech->candidates[c], closure);
        WorkRow work(init.begin(), init.end());
        std::vector<std::pair<std::uint32_t, GaussRational>> hist;
        while (!work.empty()) {
            auto lead = work.begin();
            auto pv = ech->pivot.find(lead->first);
            if (pv == ech->pivot.end()) break;
            const GaussRational k = lead->second;
            subtract_scaled(work, ech->rows[pv->second], k);
            hist.emplace_back(pv->second, k);
        }
        if (work.empty()) continue;
        const GaussRational inv = work.begin()->second.inverse();
        Row row;
        row.reserve(work.size());
        for (auto& [key, coeff] : work) row.emplace_back(key, coeff * inv);
        for (auto& [idx, k] : hist) k *= inv;
        const auto j = static_cast<std::uint32_t>(ech->rows.size());
        ech->pivot.emplace(row.front().first, j);
        ech->rows.push_back(std::move(row));
        ech->origin.push_back(c);
        ech->scale.push_back(inv);
        ech->history.push_back(std::move(hist));
    }
    return ech;
}

std::string cache_key(const std::vector<RelationIdeal::Closed>& closure, int bound, std::optional<int> charge) {
    std::string key = std::to_string(bound) + "|" + (charge ? std::to_string(*charge) : "*");
    for (const auto& c : closure) key += "|" + c.poly.str();
    return key;
}

const Echelon& cached_echelon(const std::vector<RelationIdeal::Closed>& closure, int bound,
                              std::optional<int> charge, const MembershipOptions& opts) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<Echelon>> cache;
    const std::string key = cache_key(closure, bound, charge) + "|" + std::to_string(opts.max_rows);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_echelon(closure, bound, charge, opts)).first;
    return *it->second;
}

// Expresses `target` (central-free) in the span of the candidates; weights per candidate.
std::optional<std::map<std::size_t, GaussRational>> solve(const Echelon& ech, const StarPoly& target) {
    WorkRow work;
    for (const auto& [m, coeff] : target.terms()) work.emplace(encode(m.word), coeff);
    std::map<std::uint32_t, GaussRational> basis_weight;
    while (!work.empty()) {
        auto lead = work.begin();
        auto pv = ech.pivot.find(lead->first);
        if (pv == ech.pivot.end()) return std::nullopt;
        const GaussRational k = lead->second;
        subtract_scaled(work, ech.rows[pv->second], k);
        basis_weight[pv->second] += k;
    }
    std::map<std::size_t, GaussRational> weights;
    for (auto it = basis_weight.rbegin(); it != basis_weight.rend(); ++it) {
        const std::uint32_t j = it->first;
        const GaussRational w = it->second;
        if (w.is_zero()) continue;
        weights[ech.origin[j]] += w * ech.scale[j];
        for (const auto& [k, c] : ech.history[j]) basis_weight[k] -= w * c;
    }
    std::erase_if(weights, [](const auto& kv) { return kv.second.is_zero(); });
    return weights;
}

}  // namespace

std::optional<MembershipCertificate> ideal_member(const StarPoly& target, const RelationIdeal& ideal,
                                                  int degree_bound, const MembershipOptions& opts) {
    if (degree_bound < target.degree())
        throw PreconditionError("ideal_member: degree bound " + std::to_string(degree_bound) +
                                " is below the target degree " + std::to_string(target.degree()));
    if (degree_bound > kMaxWordLength)
        throw PreconditionError("ideal_member: degree bound above " + std::to_string(kMaxWordLength));
    for (const StarPoly& g : ideal.generators)
        for (const auto& [m, coeff] : g.terms())
            if (m.centrals != std::array<int, 2>{0, 0})
                throw PreconditionError("ideal_member: generators must not contain central symbols");

    const auto closure = ideal.star_closure();
    // With charge-homogeneous generators the ideal splits along the charge grading.
    const bool graded = std::all_of(closure.begin(), closure.end(), [](const RelationIdeal::Closed& c) {
        int q = 0;
        return charge_homogeneous(c.poly, q);
    });
    MembershipCertificate cert{target, degree_bound, {}};
    const StarPoly reduced = reduce_central(target, ideal.central_relations);

    for (const auto& [centrals, part] : reduced.split_by_centrals()) {
        // Strip the central factor; the ideal is generated by central-free polynomials.
        StarPoly words;
        for (const auto& [m, coeff] : part.terms()) words.add_term(Monomial{m.word, {0, 0}}, coeff);

        std::map<int, StarPoly> by_charge;
        for (const auto& [m, coeff] : words.terms()) by_charge[graded ? m.charge() : 0].add_term(m, coeff);

        for (const auto& [q, piece] : by_charge) {
            const Echelon& ech =
                cached_echelon(closure, degree_bound, graded ? std::optional<int>(q) : std::nullopt, opts);
            auto weights = solve(ech, piece);
            if (!weights) return std::nullopt;
            for (const auto& [c, w] : *weights) {
                const Candidate& cand = ech.candidates[c];
                Monomial left{decode(cand.left), centrals};
                cert.decomposition.push_back({std::move(left), closure[cand.closed].index,
                                              closure[cand.closed].adjoint, Monomial{decode(cand.right), {0, 0}},
                                              w});
            }
        }
    }
    return cert;
}

StarPoly replay(const MembershipCertificate& cert, const RelationIdeal& ideal) {
    StarPoly sum;
    for (const CertificateTerm& t : cert.decomposition) {
        if (t.generator >= ideal.generators.size()) throw PreconditionError("replay: generator index out of range");
        const StarPoly& g = ideal.generators[t.generator];
        sum += StarPoly(t.left, t.coeff) * (t.adjoint ? g.adjoint() : g) * StarPoly(t.right);
    }
    return reduce_central(sum, ideal.central_relations);
}

}  // namespace balk1::starpoly
