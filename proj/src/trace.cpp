#include "olo/trace.hpp"

#include <fstream>
#include <sstream>

namespace olo {

namespace {

constexpr const char* kMagic = "olo-trace v1";

std::vector<std::string> columns_for(const RunTrace& trace)
{
    std::vector<std::string> columns = {"t", "wealth"};
    const auto add = [&](const char* prefix, Index n) {
        for (Index i = 0; i < n; ++i)
            columns.push_back(prefix + std::to_string(i));
    };
    if (trace.rounds.empty())
        return columns;
    const RoundRecord& first = trace.rounds.front();
    add("w_", first.w.size());
    add("g_", first.g.size());
    add("raw_g_", first.raw_g.size());
    add("z_", first.z.size());
    add("gt_", first.g_tilde.size());
    return columns;
}

std::vector<std::string> cells_for(const RoundRecord& r)
{
    std::vector<std::string> cells = {std::to_string(r.t), r.wealth ? encode_real(*r.wealth) : ""};
    for (const Vector* v : {&r.w, &r.g, &r.raw_g, &r.z, &r.g_tilde})
        for (Index i = 0; i < v->size(); ++i)
            cells.push_back(encode_real((*v)[i]));
    return cells;
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string cell;
    std::stringstream in(line);
    while (std::getline(in, cell, sep))
        out.push_back(cell);
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

/// Maps column names back into record fields.
struct Layout
{
    Index w = 0, g = 0, raw_g = 0, z = 0, gt = 0;

    explicit Layout(const std::vector<std::string>& columns)
    {
        if (columns.size() < 2 || columns[0] != "t" || columns[1] != "wealth")
            throw ArgumentError("trace: header must start with t,wealth");
        for (std::size_t i = 2; i < columns.size(); ++i) {
            const std::string& c = columns[i];
            if (c.rfind("raw_g_", 0) == 0)
                ++raw_g;
            else if (c.rfind("gt_", 0) == 0)
                ++gt;
            else if (c.rfind("w_", 0) == 0)
                ++w;
            else if (c.rfind("g_", 0) == 0)
                ++g;
            else if (c.rfind("z_", 0) == 0)
                ++z;
            else
                throw ArgumentError("trace: unknown column '" + c + "'");
        }
    }

    std::size_t width() const { return static_cast<std::size_t>(2 + w + g + raw_g + z + gt); }

    RoundRecord decode(const std::vector<std::string>& cells) const
    {
        if (cells.size() != width())
            throw ArgumentError("trace: row has " + std::to_string(cells.size()) + " cells, expected " +
                                std::to_string(width()));
        RoundRecord r;
        r.t = std::stoll(cells[0]);
        if (!cells[1].empty())
            r.wealth = decode_real(cells[1]);
        std::size_t pos = 2;
        const auto take = [&](Vector& v, Index n) {
            v.resize(n);
            for (Index i = 0; i < n; ++i)
                v[i] = decode_real(cells[pos++]);
        };
        take(r.w, w);
        take(r.g, g);
        take(r.raw_g, raw_g);
        take(r.z, z);
        take(r.g_tilde, gt);
        return r;
    }
};

} // namespace

std::vector<Vector> RunTrace::gradients() const
{
    std::vector<Vector> out;
    out.reserve(rounds.size());
    for (const auto& r : rounds)
        out.push_back(r.g);
    return out;
}

TraceFormat parse_trace_format(const std::string& text)
{
    if (text == "csv")
        return TraceFormat::csv;
    if (text == "json")
        return TraceFormat::json;
    throw ArgumentError("unknown trace format '" + text + "'");
}

void write_csv(std::ostream& out, const RunTrace& trace)
{
    out << "# " << kMagic << '\n';
    out << "# prng: " << trace.prng << '\n';
    out << "# config: " << trace.config.dump() << '\n';
    const auto columns = columns_for(trace);
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& r : trace.rounds) {
        const auto cells = cells_for(r);
        for (std::size_t i = 0; i < cells.size(); ++i)
            out << (i ? "," : "") << cells[i];
        out << '\n';
    }
}

void write_json(std::ostream& out, const RunTrace& trace)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : trace.rounds)
        rows.push_back(cells_for(r));
    const nlohmann::json doc = {
        {"format", kMagic},
        {"prng", trace.prng},
        {"config", trace.config},
        {"columns", columns_for(trace)},
        {"rows", rows},
    };
    out << doc.dump() << '\n';
}

void write_trace(const std::string& path, const RunTrace& trace, TraceFormat format)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ArgumentError("cannot open '" + path + "' for writing");
    if (format == TraceFormat::csv)
        write_csv(out, trace);
    else
        write_json(out, trace);
}

RunTrace read_csv(std::istream& in)
{
    RunTrace trace;
    std::string line;
    std::optional<Layout> layout;
    bool magic = false;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line[0] == '#') {
            const std::string body = line.substr(line.find_first_not_of("# "));
            if (body == kMagic)
                magic = true;
            else if (body.rfind("prng: ", 0) == 0)
                trace.prng = body.substr(6);
            else if (body.rfind("config: ", 0) == 0)
                trace.config = nlohmann::json::parse(body.substr(8));
            continue;
        }
        if (!layout) {
            layout.emplace(split(line, ','));
            continue;
        }
        trace.rounds.push_back(layout->decode(split(line, ',')));
    }
    if (!magic)
        throw ArgumentError(std::string("trace: missing '") + kMagic + "' header");
    return trace;
}

RunTrace read_json(std::istream& in)
{
    const nlohmann::json doc = nlohmann::json::parse(in);
    if (doc.value("format", "") != kMagic)
        throw ArgumentError(std::string("trace: missing '") + kMagic + "' header");
    RunTrace trace;
    trace.prng = doc.value("prng", "");
    trace.config = doc.at("config");
    const Layout layout(doc.at("columns").get<std::vector<std::string>>());
    for (const auto& row : doc.at("rows"))
        trace.rounds.push_back(layout.decode(row.get<std::vector<std::string>>()));
    return trace;
}

RunTrace read_trace(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ArgumentError("cannot open '" + path + "'");
    const int first = in.peek();
    if (first == '{')
        return read_json(in);
    return read_csv(in);
}

} // namespace olo
