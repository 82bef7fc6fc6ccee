// Ground-truth engine: exhaustive enumeration of SL(n, 2^m) with the tau
// coset for tiny (n, m), exact conjugacy partitions, and cross-validation
// of the structural modules against them.
#ifndef STRATA_ORACLE_HPP
#define STRATA_ORACLE_HPP

#include <string>

#include "strata/group.hpp"

namespace strata {

struct FiniteGroupSnapshot {
    int n = 0, m = 0;
    std::vector<Mat> elements;                    // all of SL(n, 2^m), enumeration order
    std::vector<int> coset_class_of;              // index of the G°-class of (X, 1)
    std::vector<std::vector<int>> coset_classes;  // class -> element indices
    std::vector<int> full_class_of;               // classes under the full group
    std::vector<std::vector<int>> full_classes;
    std::vector<std::uint64_t> centralizer_orders;  // |C_{G°}(x)| per coset class

    std::uint64_t order() const { return elements.size(); }
    int element_index(const Mat& x) const;  // -1 when absent
};

namespace oracle {

// Supported grid: (2,1), (2,2), (3,1), (3,2); optionally cached on disk.
FiniteGroupSnapshot enumerate_group(int n, int m, const std::string& cache_dir = "");

struct LemmaReport {
    int total = 0;
    int in_minimal_class = 0;   // conjugate to tau
    int in_regular_class = 0;   // conjugate to u1 tau
    std::vector<std::string> violations;
    bool passed() const { return violations.empty(); }
};

// The two-orbit lemma on U(F_{2^m}) tau: the a1 = a3 criterion, the
// y12 = y23 necessary condition on the minimal class, and (for m = 1) the
// equal split.
LemmaReport verify_unipotent_lemma(int m, const std::string& cache_dir = "");

struct CrossValidation {
    std::vector<std::pair<std::string, bool>> checks;
    bool passed() const {
        for (const auto& [name, ok] : checks)
            if (!ok) return false;
        return true;
    }
};

// Compare classification labels, orbit sizes, centralizer orders, and the
// induced-orbit prediction against the snapshot.
CrossValidation cross_validate(int n, int m, const std::string& cache_dir = "");

} // namespace oracle
} // namespace strata

#endif
