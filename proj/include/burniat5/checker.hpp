#pragma once

#include <optional>
#include <string>
#include <vector>

#include "burniat5/certificate.hpp"
#include "burniat5/linarith.hpp"

namespace bur5 {

struct Verdict {
    bool valid = false;
    std::string reason;      // empty when valid
    int step_index = -1;     // 1-based index of the failing step, -1 if none
    int line = 0, col = 0;

    static Verdict ok() { return {true, "", -1, 0, 0}; }
};

struct CheckOptions {
    // Re-check with the domain narrowed to a single integer value of n.
    std::optional<long> instantiate_n;
};

Verdict check_certificate(const Certificate& c, const CheckOptions& opt = {});

// Fourier-Motzkin decision surface, exposed for the CLI and tests.
FeasResult fm_infeasible(const LinSystem& sys);

// Mutation harness: perturbs every rational literal occurring in an
// intersection identity or in the threshold by +1 and -1, re-checks, and
// reports how many perturbed certificates were (wrongly) accepted.
struct MutationReport {
    int mutants = 0;
    int rejected = 0;
    std::vector<std::string> accepted;  // descriptions of surviving mutants
};
MutationReport mutate_and_check(const Certificate& c);

// Integer instantiation sweep: checks the certificate with n pinned to every
// integer of its domain up to max_n. Returns the first failing instantiation,
// if any.
std::optional<std::pair<long, Verdict>> instantiation_sweep(const Certificate& c,
                                                            long max_n);

// Smallest integer n admitted by the certificate's domain (1 for Thm3 files,
// 2 for Thm2 files); nullopt for certificates without n.
std::optional<long> domain_min_n(const Certificate& c);

}  // namespace bur5
