#include "covmark/words.hpp"

#include <algorithm>
#include <sstream>

namespace covmark {

namespace {

std::string symbol_name(int factor, bool inverse) {
    std::string base;
    if (factor < 26)
        base = std::string(1, static_cast<char>('a' + factor));
    else
        base = "g" + std::to_string(factor);
    if (inverse) {
        for (auto& c : base) c = static_cast<char>(std::toupper(c));
    }
    return base;
}

} // namespace

GroupOracle GroupOracle::free_group(int rank) {
    if (rank < 1) throw input_error("free_group: rank must be >= 1");
    GroupOracle g;
    g.family_ = GroupFamily::FreeGroup;
    g.rank_ = rank;
    for (int i = 0; i < rank; ++i) {
        int pos = g.gens_.add(symbol_name(i, false));
        int neg = g.gens_.add(symbol_name(i, true));
        g.gens_.set_inverse(pos, neg);
        g.factor_of_.push_back(i);
        g.factor_of_.push_back(i);
        g.sign_of_.push_back(+1);
        g.sign_of_.push_back(-1);
    }
    return g;
}

GroupOracle GroupOracle::free_abelian(int rank) {
    if (rank < 1) throw input_error("free_abelian: rank must be >= 1");
    GroupOracle g = free_group(rank);
    g.family_ = GroupFamily::FreeAbelian;
    return g;
}

GroupOracle GroupOracle::free_product_cyclic(const std::vector<int>& orders) {
    if (orders.size() < 2)
        throw input_error("free_product_cyclic: need at least two factors");
    for (int m : orders)
        if (m < 2) throw input_error("free_product_cyclic: factor orders must be >= 2");
    if (orders.size() == 2 && orders[0] == 2 && orders[1] == 2)
        throw input_error(
            "free_product_cyclic: Z2*Z2 is the infinite dihedral group, which is "
            "elementary (virtually cyclic) and excluded");
    GroupOracle g;
    g.family_ = GroupFamily::FreeProductCyclic;
    g.orders_ = orders;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        int fi = static_cast<int>(i);
        if (orders[i] == 2) {
            int s = g.gens_.add(symbol_name(fi, false));
            g.gens_.set_inverse(s, s);
            g.factor_of_.push_back(fi);
            g.sign_of_.push_back(+1);
        } else {
            int pos = g.gens_.add(symbol_name(fi, false));
            int neg = g.gens_.add(symbol_name(fi, true));
            g.gens_.set_inverse(pos, neg);
            g.factor_of_.push_back(fi);
            g.factor_of_.push_back(fi);
            g.sign_of_.push_back(+1);
            g.sign_of_.push_back(-1);
        }
    }
    return g;
}

std::string GroupOracle::describe() const {
    std::ostringstream os;
    switch (family_) {
    case GroupFamily::FreeGroup: os << "free:" << rank_; break;
    case GroupFamily::FreeAbelian: os << "abelian:" << rank_; break;
    case GroupFamily::FreeProductCyclic:
        os << "product:";
        for (std::size_t i = 0; i < orders_.size(); ++i)
            os << (i ? "," : "") << orders_[i];
        break;
    }
    return os.str();
}

void GroupOracle::check_word(const Word& w) const {
    for (int id : w)
        if (id < 0 || id >= gens_.size())
            throw input_error("word contains unknown generator id " + std::to_string(id));
}

Word GroupOracle::reduce(const Word& w) const {
    check_word(w);
    switch (family_) {
    case GroupFamily::FreeGroup: return reduce_free(w);
    case GroupFamily::FreeAbelian: return reduce_abelian(w);
    case GroupFamily::FreeProductCyclic: return reduce_product(w);
    }
    return {};
}

Word GroupOracle::reduce_free(const Word& w) const {
    Word out;
    out.reserve(w.size());
    for (int id : w) {
        if (!out.empty() && out.back() == gens_.inverse(id))
            out.pop_back();
        else
            out.push_back(id);
    }
    return out;
}

Word GroupOracle::reduce_abelian(const Word& w) const {
    std::vector<long long> exponent(rank_, 0);
    for (int id : w) exponent[factor_of_[id]] += sign_of_[id];
    Word out;
    for (int f = 0; f < rank_; ++f) {
        const int sym = 2 * f + (exponent[f] >= 0 ? 0 : 1);
        for (long long j = 0; j < std::abs(exponent[f]); ++j) out.push_back(sym);
    }
    return out;
}

Word GroupOracle::reduce_product(const Word& w) const {
    // Syllable stack: (factor, exponent mod m), exponents kept in [1, m-1].
    std::vector<std::pair<int, int>> syllables;
    for (int id : w) {
        const int f = factor_of_[id];
        const int m = orders_[f];
        const int delta = sign_of_[id] > 0 ? 1 : m - 1;
        if (!syllables.empty() && syllables.back().first == f) {
            int e = (syllables.back().second + delta) % m;
            if (e == 0)
                syllables.pop_back();
            else
                syllables.back().second = e;
        } else {
            syllables.emplace_back(f, delta);
        }
    }
    // Geodesic rendering: x^j spelled with min(j, m-j) letters, ties positive.
    Word out;
    for (auto [f, e] : syllables) {
        const int m = orders_[f];
        int pos_sym = -1, neg_sym = -1;
        for (int id = 0; id < gens_.size(); ++id) {
            if (factor_of_[id] != f) continue;
            if (sign_of_[id] > 0) pos_sym = id;
            else neg_sym = id;
        }
        if (e <= m - e) {
            for (int j = 0; j < e; ++j) out.push_back(pos_sym);
        } else {
            for (int j = 0; j < m - e; ++j) out.push_back(neg_sym);
        }
    }
    return out;
}

Word GroupOracle::multiply(const Word& a, const Word& b) const {
    Word c = a;
    c.insert(c.end(), b.begin(), b.end());
    return reduce(c);
}

Word GroupOracle::inverse_word(const Word& w) const {
    check_word(w);
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(gens_.inverse(*it));
    return reduce(out);
}

int GroupOracle::word_length(const Word& w) const {
    return static_cast<int>(reduce(w).size());
}

int GroupOracle::distance(const Word& a, const Word& b) const {
    return word_length(multiply(inverse_word(a), b));
}

std::vector<std::vector<Word>> GroupOracle::spheres(int radius, std::uint64_t guard) const {
    if (radius < 0) throw input_error("spheres: radius must be >= 0");
    std::vector<std::vector<Word>> result;
    WordSet seen;
    std::vector<Word> frontier{Word{}};
    seen.insert(Word{});
    result.push_back(frontier);
    for (int n = 1; n <= radius; ++n) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            for (int id = 0; id < gens_.size(); ++id) {
                Word cand = w;
                cand.push_back(id);
                cand = reduce(cand);
                if (seen.insert(cand).second) {
                    next.push_back(std::move(cand));
                    if (seen.size() > guard)
                        throw resource_error("enumerate_ball: ball size exceeds guard of " +
                                             std::to_string(guard) + " elements");
                }
            }
        }
        result.push_back(std::move(next));
        frontier = result.back();
    }
    return result;
}

WordSet GroupOracle::enumerate_ball(int radius, std::uint64_t guard) const {
    WordSet ball;
    for (auto& sphere : spheres(radius, guard))
        for (auto& w : sphere) ball.insert(std::move(w));
    return ball;
}

std::uint64_t GroupOracle::count_sphere_bruteforce(int n, std::uint64_t guard) const {
    return spheres(n, guard).at(n).size();
}

} // namespace covmark
