#pragma once

#include <cstdint>
#include <stdexcept>

#include "hurdle/algorithms.hpp"
#include "hurdle/local_search.hpp"
#include "hurdle/records.hpp"

namespace hurdle {

/// Everything a single run needs besides the problem. pm is ignored by the
/// restart-LS variants (their records carry pm = 0); delta is ignored by the
/// plain EA (records carry delta = 0).
struct RunParams {
    Algorithm algo = Algorithm::EA;
    double pm = 0.0;
    std::size_t delta = 1;
    std::uint64_t budget = 1;
    std::uint64_t seed = 0;
};

template <class Problem>
RunRecord execute_run(const Problem& problem, const RunParams& params) {
    switch (params.algo) {
        case Algorithm::EA:
            return one_plus_one_ea(problem, params.pm, params.budget, params.seed);
        case Algorithm::MA_FILS:
            return one_plus_one_ma(problem, LSVariant{LSKind::FILS, params.delta}, params.pm,
                                   params.budget, params.seed);
        case Algorithm::MA_BILS:
            return one_plus_one_ma(problem, LSVariant{LSKind::BILS, params.delta}, params.pm,
                                   params.budget, params.seed);
        case Algorithm::LS_FILS:
            return restart_ls(problem, LSVariant{LSKind::FILS, params.delta}, params.budget, params.seed);
        case Algorithm::LS_BILS:
            return restart_ls(problem, LSVariant{LSKind::BILS, params.delta}, params.budget, params.seed);
    }
    throw std::logic_error("execute_run: unknown algorithm");
}

} // namespace hurdle
