// Exception hierarchy shared by all strata modules.
#ifndef STRATA_ERROR_HPP
#define STRATA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace strata {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define STRATA_DEFINE_ERROR(Name)                                  \
    struct Name : Error {                                          \
        explicit Name(const std::string& what = #Name) : Error(what) {} \
    }

STRATA_DEFINE_ERROR(NonDivisibleDegree);
STRATA_DEFINE_ERROR(UnsupportedDegree);
STRATA_DEFINE_ERROR(ZeroElement);
STRATA_DEFINE_ERROR(SingularMatrix);
STRATA_DEFINE_ERROR(RankMismatch);
STRATA_DEFINE_ERROR(FieldTowerExceeded);
STRATA_DEFINE_ERROR(UnsupportedRank);
STRATA_DEFINE_ERROR(NotIsolated);
STRATA_DEFINE_ERROR(SamplingInconclusive);
STRATA_DEFINE_ERROR(NonIntegralSlope);
STRATA_DEFINE_ERROR(MemoryBudgetExceeded);
STRATA_DEFINE_ERROR(NonUniqueTruncation);
STRATA_DEFINE_ERROR(UnsupportedSize);
STRATA_DEFINE_ERROR(ConsistencyFailure);
STRATA_DEFINE_ERROR(BudgetExceeded);

#undef STRATA_DEFINE_ERROR

} // namespace strata

#endif
