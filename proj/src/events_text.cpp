#include <charconv>
#include <stdexcept>

#include "colperc/events.hpp"

namespace colperc {

// Text encoding, format v1:
//   hard:n=8
//   rect:lo=0,0;hi=16,8;axis=h
//   annulus:n=8;center=0,0
//   fourarm:n=8  fivearm:n=8  onearm:n=8
//   pivotal:edge=0,0-1,0;inner=(annulus:n=4;center=0,0)

namespace {

std::string site_text(Site s) {
    return std::to_string(s.x1) + "," + std::to_string(s.x2);
}

[[noreturn]] void bad(std::string_view text, const char* why) {
    throw std::invalid_argument("parse_event: " + std::string(why) + " in '" +
                                std::string(text) + "'");
}

int parse_int(std::string_view text, std::string_view field) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) bad(text, "bad integer");
    return value;
}

Site parse_site(std::string_view text, std::string_view field) {
    auto comma = field.find(',');
    if (comma == std::string_view::npos) bad(text, "bad site");
    return {parse_int(text, field.substr(0, comma)), parse_int(text, field.substr(comma + 1))};
}

// Splits "k1=v1;k2=v2;..." respecting one level of parentheses in values.
std::vector<std::pair<std::string_view, std::string_view>> split_fields(std::string_view text,
                                                                        std::string_view body) {
    std::vector<std::pair<std::string_view, std::string_view>> fields;
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t eq = body.find('=', pos);
        if (eq == std::string_view::npos) bad(text, "missing '='");
        std::size_t end = eq + 1;
        int depth = 0;
        while (end < body.size() && (depth > 0 || body[end] != ';')) {
            if (body[end] == '(') ++depth;
            if (body[end] == ')') --depth;
            ++end;
        }
        if (depth != 0) bad(text, "unbalanced parentheses");
        fields.emplace_back(body.substr(pos, eq - pos), body.substr(eq + 1, end - eq - 1));
        pos = end < body.size() ? end + 1 : end;
    }
    return fields;
}

std::string_view field_of(std::string_view text,
                          const std::vector<std::pair<std::string_view, std::string_view>>& fields,
                          std::string_view key) {
    for (const auto& [k, v] : fields)
        if (k == key) return v;
    bad(text, "missing field");
}

}  // namespace

std::string format_event(const EventSpec& spec) {
    return std::visit(
        [](const auto& ev) -> std::string {
            using T = std::decay_t<decltype(ev)>;
            if constexpr (std::is_same_v<T, HardCrossing>) {
                return "hard:n=" + std::to_string(ev.n);
            } else if constexpr (std::is_same_v<T, RectCrossing>) {
                return "rect:lo=" + site_text(ev.rect.lo) + ";hi=" + site_text(ev.rect.hi) +
                       ";axis=" + (ev.axis == Axis::Horizontal ? "h" : "v");
            } else if constexpr (std::is_same_v<T, AnnulusCircuit>) {
                return "annulus:n=" + std::to_string(ev.n) + ";center=" + site_text(ev.center);
            } else if constexpr (std::is_same_v<T, FourArm>) {
                return "fourarm:n=" + std::to_string(ev.n);
            } else if constexpr (std::is_same_v<T, FiveArm>) {
                return "fivearm:n=" + std::to_string(ev.n);
            } else if constexpr (std::is_same_v<T, OneArm>) {
                return "onearm:n=" + std::to_string(ev.n);
            } else {
                return "pivotal:edge=" + site_text(ev.edge.a) + "-" + site_text(ev.edge.b) +
                       ";inner=(" + format_event(*ev.inner) + ")";
            }
        },
        spec);
}

EventSpec parse_event(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) bad(text, "missing ':'");
    const std::string_view kind = text.substr(0, colon);
    const auto fields = split_fields(text, text.substr(colon + 1));

    if (kind == "hard") return HardCrossing{parse_int(text, field_of(text, fields, "n"))};
    if (kind == "fourarm") return FourArm{parse_int(text, field_of(text, fields, "n"))};
    if (kind == "fivearm") return FiveArm{parse_int(text, field_of(text, fields, "n"))};
    if (kind == "onearm") return OneArm{parse_int(text, field_of(text, fields, "n"))};
    if (kind == "annulus")
        return AnnulusCircuit{parse_site(text, field_of(text, fields, "center")),
                              parse_int(text, field_of(text, fields, "n"))};
    if (kind == "rect") {
        const Site lo = parse_site(text, field_of(text, fields, "lo"));
        const Site hi = parse_site(text, field_of(text, fields, "hi"));
        const std::string_view axis = field_of(text, fields, "axis");
        if (axis != "h" && axis != "v") bad(text, "axis must be h or v");
        return RectCrossing{Rect{lo, hi}, axis == "h" ? Axis::Horizontal : Axis::Vertical};
    }
    if (kind == "pivotal") {
        const std::string_view edge_text = field_of(text, fields, "edge");
        auto dash = edge_text.find('-');
        if (dash == std::string_view::npos) bad(text, "bad edge");
        const Edge edge{parse_site(text, edge_text.substr(0, dash)),
                        parse_site(text, edge_text.substr(dash + 1))};
        std::string_view inner = field_of(text, fields, "inner");
        if (inner.size() < 2 || inner.front() != '(' || inner.back() != ')')
            bad(text, "inner event must be parenthesised");
        return Pivotal{edge, parse_event(inner.substr(1, inner.size() - 2))};
    }
    bad(text, "unknown event kind");
}

}  // namespace colperc
