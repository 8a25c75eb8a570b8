#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "covmark/errors.hpp"

namespace covmark {

/// A word is a sequence of generator symbol ids; the group element is the
/// product of the letters taken left to right. The empty word is the identity.
using Word = std::vector<int>;

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (int v : w) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

using WordSet = std::unordered_set<Word, WordHash>;

/// Symmetric generating set: every symbol has an inverse symbol in the table
/// (possibly itself, for order-2 generators).
class GeneratorTable {
public:
    GeneratorTable() = default;

    int add(const std::string& name) {
        names_.push_back(name);
        inverse_.push_back(-1);
        return static_cast<int>(names_.size()) - 1;
    }
    void set_inverse(int a, int b) {
        inverse_.at(a) = b;
        inverse_.at(b) = a;
    }

    int size() const { return static_cast<int>(names_.size()); }
    int inverse(int id) const { return inverse_.at(id); }
    const std::string& name(int id) const { return names_.at(id); }

    /// Index of a named symbol, -1 if absent.
    int id_of(const std::string& name) const {
        for (int i = 0; i < size(); ++i)
            if (names_[i] == name) return i;
        return -1;
    }

    bool operator==(const GeneratorTable& other) const {
        return names_ == other.names_ && inverse_ == other.inverse_;
    }

private:
    std::vector<std::string> names_;
    std::vector<int> inverse_;
};

enum class GroupFamily { FreeGroup, FreeAbelian, FreeProductCyclic };

/// Ground-truth group arithmetic for the supported families: normal forms,
/// geodesic word length, and brute-force ball enumeration. All operations are
/// pure; an oracle can be shared freely across threads.
class GroupOracle {
public:
    static GroupOracle free_group(int rank);
    static GroupOracle free_abelian(int rank);
    static GroupOracle free_product_cyclic(const std::vector<int>& orders);

    GroupFamily family() const { return family_; }
    const GeneratorTable& generators() const { return gens_; }
    int rank() const { return rank_; }
    const std::vector<int>& orders() const { return orders_; }
    std::string describe() const;

    /// Normal form of w; its letter count is the geodesic length of the
    /// element. Unknown generator ids are input errors.
    Word reduce(const Word& w) const;
    Word multiply(const Word& a, const Word& b) const;
    Word inverse_word(const Word& w) const;
    int word_length(const Word& w) const;
    int distance(const Word& a, const Word& b) const;

    static constexpr std::uint64_t kBallGuard = 10'000'000;

    /// Spheres 0..radius as sets of normal forms. Exact and duplicate-free;
    /// throws resource_error once the ball exceeds `guard` elements.
    std::vector<std::vector<Word>> spheres(int radius, std::uint64_t guard = kBallGuard) const;
    WordSet enumerate_ball(int radius, std::uint64_t guard = kBallGuard) const;
    std::uint64_t count_sphere_bruteforce(int n, std::uint64_t guard = kBallGuard) const;

private:
    GroupFamily family_ = GroupFamily::FreeGroup;
    int rank_ = 0;              // free / abelian rank
    std::vector<int> orders_;   // cyclic factor orders (product family)
    GeneratorTable gens_;
    std::vector<int> factor_of_; // symbol id -> factor index
    std::vector<int> sign_of_;   // symbol id -> +1 (generator) or -1 (inverse)

    void check_word(const Word& w) const;
    Word reduce_free(const Word& w) const;
    Word reduce_abelian(const Word& w) const;
    Word reduce_product(const Word& w) const;
};

} // namespace covmark
