#pragma once

#include "trycolor/engine.hpp"
#include "trycolor/field.hpp"
#include "trycolor/graph.hpp"

namespace trycolor {

struct MotherParams {
    int m = 0;      // input palette
    int delta = 0;  // degree bound
    int d = 0;      // tolerated conflicts per trial, 0 <= d <= delta-2
    int k = 1;      // batch size, 1 <= k <= X
};

// Derived quantities. X = 4*(delta/(d+1))*f rounded down; q <= X always, so
// every bound stated against X also holds against the exact real value.
struct MotherBounds {
    int f = 0;            // polynomial degree cap
    long long q = 0;      // field size
    long long x = 0;      // floor(4 * f * delta / (d+1))
    long long r = 0;      // ceil(x / k), iteration bound
    long long c = 0;      // x * k, color bound
    int palette = 0;      // declared output palette: min(k, q) * q
    int batch_rounds = 0; // ceil(q / k), batches actually provisioned
};

MotherBounds derive_bounds(const MotherParams& p);

// floor(2*f*delta/(d+1)), the blocked-tuple count; always < q.
long long blocked_bound(const MotherParams& p);

struct MotherOutput {
    Coloring psi;             // tuple (x mod k, p(x)) encoded as first*q + second
    Orientation orientation;  // covers exactly the monochromatic edges of psi
    Partition partition;      // part = iteration in which the node adopted
    MotherBounds bounds;
    int iterations_used = 0;
    RunTrace trace;
    MessageAudit audit;
};

// Batch-trial coloring: per iteration, every uncolored node broadcasts its
// input color, reconstructs its neighbors' current batches locally, and
// adopts the smallest-index tuple conflicting with at most d neighbors
// (simultaneous triers plus already-adopted ones). Two engine rounds per
// iteration: trial broadcast, then adoption announcement.
MotherOutput run_mother(const Graph& g, const Coloring& phi, const MotherParams& p);

// Same algorithm, but node views restricted to same-class neighbors; all
// classes run in the same synchronous rounds. `delta` in the params bounds
// the class-subgraph degrees.
MotherOutput run_mother_per_class(const Graph& g, const Coloring& classes, const Coloring& phi,
                                  const MotherParams& p);

}  // namespace trycolor
