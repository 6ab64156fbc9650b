#pragma once

#include <stdexcept>
#include <string>

namespace uniprior {

enum class Errc {
    syntax_error,
    invalid_model,
    non_disjoint_side_info,
    demand_in_own_side_info,
    unhoused_demanded_message,
    not_generalized_cycle,
    invalid_subgraph,
    invalid_packing,
    not_eulerian,
    isolated_vertex,
    not_applicable,
    dimension_mismatch,
    packing_not_maximum,
    unsupported_field,
    cycle_limit_exceeded,
    solver_budget_exceeded,
    search_limit_exceeded,
    budget_exceeded,
    too_large,
    retry_limit_exceeded,
    io_error,
};

const char* errc_name(Errc c);

// Limit/budget overruns get CLI exit code 2; everything else is a validation
// failure and exits 1.
bool is_limit_error(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace uniprior
