#pragma once

#include <string>
#include <vector>

#include "kirigami/geodesic.hpp"

namespace kirigami {

// endpoint selects which end of spec.edges[cut] moves: 0 for .first, 1 for .second.
// The moving end slides a distance t toward the fixed end. A shared endpoint is
// detached into a new vertex; t equal to the cut length removes the cut.
KirigamiSpec shrink_cut(const KirigamiSpec& spec, int cut, int endpoint, double t);

double dist_with_shrunk_cut(const KirigamiSpec& spec, int cut, int endpoint, double t,
                            const Tolerance& tol = {});

// Largest t with the distance unchanged (to 1e-10).
double max_seal(const KirigamiSpec& spec, int cut, int endpoint, const Tolerance& tol = {});

struct SealStep {
    int cut = -1;       // index in the original edge list
    int endpoint = 0;   // 0 or 1
    double t = 0.0;     // amount removed, in plane units
    double before = 0.0;
    double after = 0.0;
    bool removed = false;
};

struct SealTrace {
    std::vector<SealStep> steps;
    KirigamiSpec final_spec;
    std::vector<int> removed_cuts;
    std::vector<int> final_to_original;  // per edge of final_spec
};

SealTrace seal_all(const KirigamiSpec& spec, const Tolerance& tol = {});

struct MinimalityReport {
    bool probes_decrease = true;
    bool forest = true;
    bool leaves_on_geodesics = true;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

MinimalityReport verify_minimal(const KirigamiSpec& spec, double probe_fraction = 1e-4,
                                const Tolerance& tol = {});

}  // namespace kirigami
