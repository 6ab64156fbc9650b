#include "uniprior/error.hpp"

namespace uniprior {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::syntax_error: return "SyntaxError";
    case Errc::invalid_model: return "InvalidModel";
    case Errc::non_disjoint_side_info: return "NonDisjointSideInfo";
    case Errc::demand_in_own_side_info: return "DemandInOwnSideInfo";
    case Errc::unhoused_demanded_message: return "UnhousedDemandedMessage";
    case Errc::not_generalized_cycle: return "NotGeneralizedCycle";
    case Errc::invalid_subgraph: return "InvalidSubgraph";
    case Errc::invalid_packing: return "InvalidPacking";
    case Errc::not_eulerian: return "NotEulerian";
    case Errc::isolated_vertex: return "IsolatedVertex";
    case Errc::not_applicable: return "NotApplicable";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::packing_not_maximum: return "PackingNotMaximum";
    case Errc::unsupported_field: return "UnsupportedField";
    case Errc::cycle_limit_exceeded: return "CycleLimitExceeded";
    case Errc::solver_budget_exceeded: return "SolverBudgetExceeded";
    case Errc::search_limit_exceeded: return "SearchLimitExceeded";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::too_large: return "TooLarge";
    case Errc::retry_limit_exceeded: return "RetryLimitExceeded";
    case Errc::io_error: return "IoError";
    }
    return "UnknownError";
}

bool is_limit_error(Errc c) {
    switch (c) {
    case Errc::cycle_limit_exceeded:
    case Errc::solver_budget_exceeded:
    case Errc::search_limit_exceeded:
    case Errc::budget_exceeded:
    case Errc::too_large:
    case Errc::retry_limit_exceeded:
        return true;
    default:
        return false;
    }
}

} // namespace uniprior
