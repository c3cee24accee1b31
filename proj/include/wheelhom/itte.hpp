#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wheelhom/graph.hpp"

namespace wh {

struct PreconditionError : std::invalid_argument {
    std::vector<int> witness;
    PreconditionError(const std::string& what, std::vector<int> w) : std::invalid_argument(what), witness(std::move(w)) {}
};

struct ITTEInstance {
    Graph g;
    std::vector<int> forced_in;   // X'
    std::vector<int> forced_out;  // Y'
    EdgeList hit_edges;           // E'

    void normalize();  // sort, dedupe, orient edges u < v
};

using ITTESolution = std::vector<int>;  // sorted X

// Checks the instance is well formed (ranges, E' subset of E); throws std::invalid_argument.
void check_instance(const ITTEInstance& inst);

bool verify_itte(const ITTEInstance& inst, const ITTESolution& x);

std::optional<ITTESolution> solve_itte_oracle(const ITTEInstance& inst);
std::optional<ITTESolution> solve_itte_bruteforce(const ITTEInstance& inst);  // n <= 24

struct Eliminated {
    ITTEInstance inst;          // Y' empty
    std::vector<int> old_of_new;
};

// nullopt is the NoInstance signal
std::optional<Eliminated> eliminate_forced_out(const ITTEInstance& inst);

// Restrict an instance to an induced subgraph (constraints restricted accordingly).
ITTEInstance restrict_instance(const ITTEInstance& inst, const std::vector<int>& keep);

ITTEInstance read_itte(std::istream& in, int* line_no = nullptr);
void write_itte(std::ostream& out, const ITTEInstance& inst);

}  // namespace wh
