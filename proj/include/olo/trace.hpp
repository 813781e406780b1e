#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "olo/learner.hpp"

namespace olo {

/// One round: played w_t, the scaled gradient g_t the learner saw, the raw
/// adversary gradient, and the child record of a reduction when present.
struct RoundRecord
{
    Index t = 0;
    std::optional<double> wealth;  // after the update of round t
    Vector w;
    Vector g;
    Vector raw_g;
    Vector z;        // empty unless the learner is a reduction
    Vector g_tilde;  // empty unless the learner is a reduction
};

struct RunTrace
{
    nlohmann::json config;  // the experiment configuration that produced the run
    std::string prng;
    std::vector<RoundRecord> rounds;

    Index T() const { return static_cast<Index>(rounds.size()); }
    Index dim() const { return rounds.empty() ? 0 : rounds.front().w.size(); }
    bool has_child_records() const { return !rounds.empty() && rounds.front().z.size() > 0; }
    std::vector<Vector> gradients() const;
};

enum class TraceFormat
{
    csv,
    json,
};

TraceFormat parse_trace_format(const std::string& text);

void write_csv(std::ostream& out, const RunTrace& trace);
void write_json(std::ostream& out, const RunTrace& trace);
void write_trace(const std::string& path, const RunTrace& trace, TraceFormat format);

RunTrace read_csv(std::istream& in);
RunTrace read_json(std::istream& in);
/// Picks the reader from the file contents.
RunTrace read_trace(const std::string& path);

} // namespace olo
