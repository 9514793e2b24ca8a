#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "colperc/clusters.hpp"
#include "colperc/sampling.hpp"

namespace colperc {

enum class Axis { Horizontal, Vertical };

struct HardCrossing {
    int n;
};
struct RectCrossing {
    Rect rect;
    Axis axis;
};
struct AnnulusCircuit {
    Site center;
    int n;
};
struct FourArm {
    int n;
};
struct FiveArm {
    int n;
};
struct OneArm {
    int n;
};
struct Pivotal;

using EventSpec =
    std::variant<HardCrossing, RectCrossing, AnnulusCircuit, FourArm, FiveArm, OneArm, Pivotal>;

struct Pivotal {
    Pivotal(Edge e, EventSpec inner_spec);
    Edge edge;
    std::shared_ptr<const EventSpec> inner;
};

// Smallest region a configuration must cover to evaluate the event.
Rect required_region(const EventSpec& spec);
bool evaluate(const EventSpec& spec, const BondConfig& config);

// Scale parameter n, when the event has one.
std::optional<int> event_scale(const EventSpec& spec);
EventSpec with_scale(const EventSpec& spec, int n);

// Canonical text encoding, format v1 (see README). Round-trips exactly.
std::string format_event(const EventSpec& spec);
EventSpec parse_event(std::string_view text);

// --- detectors ---

// Open path between the two opposite sides of `rect`, inside `rect`.
bool rect_crossing(const BondConfig& config, const Rect& rect, Axis axis);

// Crossing of `span` in direction `axis` whose intermediate sites avoid the
// two sides parallel to the crossing; endpoints may sit anywhere on the two
// crossed sides. Horizontal at span [0,2n]x[0,n] is the hard-way event.
bool hard_way_crossing(const BondConfig& config, const Rect& span, Axis axis);
bool hard_crossing(const BondConfig& config, int n);

// Dual-open path separating the two sides of `rect` (the exact complement of
// rect_crossing; exercised by the duality tests).
bool dual_blocking_path(const BondConfig& config, const Rect& rect, Axis axis);

// Open circuit in B_{2n-1}(x) \ B_n(x) with non-zero winding around x.
// Production detector: a circuit exists iff no dual path leads from the
// squares at x to the outside of B_{2n-1}(x), where a dual step is blocked
// exactly by open annulus edges.
bool annulus_circuit(const BondConfig& config, Site x, int n);

// Independent oracle: cut the annulus along the eastward ray from x and track
// winding sheets; a circuit exists iff some site connects to its own copy one
// sheet up.
bool annulus_circuit_oracle(const BondConfig& config, Site x, int n);

// E_4(n): 0 and its fixed neighbour (1,0) both reach the box boundary without
// being connected to each other inside B_n.
bool four_arm(const BondConfig& config, int n);
// E_5(n): E_4(n) plus two open paths from 0 to the boundary meeting at 0 only.
bool five_arm(const BondConfig& config, int n);
// One arm: 0 reaches the boundary of B_n.
bool one_arm(const BondConfig& config, int n);

// Evaluate the event with e forced open and forced closed; pivotal iff the
// outcomes differ.
bool is_pivotal(const BondConfig& config, const Edge& e, const EventSpec& spec);
// Same, mutating and restoring the caller's scratch configuration.
bool is_pivotal_inplace(BondConfig& scratch, const Edge& e, const EventSpec& spec);

}  // namespace colperc
