#pragma once

// Report payloads for the command-line front end. Every command builds a
// versioned JSON payload ("schema": "jetseq/1"); the plain-text rendering is
// produced from that same payload, so both output modes always carry the
// same numbers.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "jetseq/checks.hpp"
#include "jetseq/dsl.hpp"
#include "jetseq/exactalg.hpp"

namespace jetseq {

using Json = nlohmann::json;

// Dimension table: jet and solution dimensions from the document's order up
// to `extra` levels beyond it, plus the count of independent equations.
Json dims_report(const SystemDocument& doc, int extra, const RankPolicy& policy);

// Symbol dimensions g_t for t from the order up to order + extra.
Json symbol_report(const SystemDocument& doc, int extra, const RankPolicy& policy);

// Boundary cohomology dims over wedge degrees 0..n and symbol degrees in
// [order, order + extra].
Json delta_report(const SystemDocument& doc, int extra, const RankPolicy& policy);

// s-acyclicity verdict for the symbol tower.
Json acyclic_report(const SystemDocument& doc, int s, int bound, const RankPolicy& policy);

// Involutivity verdict with both the boundary route and the character route.
Json involution_report(const SystemDocument& doc, int bound, std::uint64_t seed,
                       const RankPolicy& policy);

// Prolongation-projection completion; includes the completed document text.
Json complete_report(const SystemDocument& doc, int max_steps, std::uint64_t seed,
                     const RankPolicy& policy);

// Pivot census of the involutive view (the input is completed first).
Json tabular_report(const SystemDocument& doc, std::uint64_t seed, const RankPolicy& policy);

// Single bundle rows of the involutive view.
Json spencer_report(const SystemDocument& doc, std::uint64_t seed, const RankPolicy& policy);
Json janet_report(const SystemDocument& doc, std::uint64_t seed, const RankPolicy& policy);

// All three rows plus the alternating sums and the dot cross-check.
Json diagram_report(const SystemDocument& doc, std::uint64_t seed, const RankPolicy& policy);

// Condition dimensions per order up to `budget`, with the generator-order
// bound when the kernel admits one.
Json cc_report(const SystemDocument& doc, int budget, const RankPolicy& policy);

// Chain of condition operators. Unless `raw` is set, a formally integrable
// input is first prolonged to the view whose symbol is 2-acyclic (the view
// from which generating conditions appear at the certified bound order);
// inputs without such a view are resolved as given.
Json resolve_report(const SystemDocument& doc, int budget, bool raw,
                    const RankPolicy& policy);

// Polynomial solution count up to `degree`, optionally with a basis.
Json solve_report(const SystemDocument& doc, int degree, bool with_basis,
                  const RankPolicy& policy);

// Acceptance-check results.
Json check_report(const std::vector<CheckResult>& results);

// Wrappers for document-producing commands and the catalog listing.
Json document_payload(const SystemDocument& doc);
Json catalog_payload(const std::vector<std::string>& names);

// Renders any payload produced above. Reads only the payload.
std::string render_text(const Json& payload);

}  // namespace jetseq
