#include "hurwitz/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hurwitz/errors.hpp"

namespace hurwitz {

namespace fs = std::filesystem;

const std::vector<std::string>& known_anchors()
{
    static const std::vector<std::string> anchors = {
        "hurwitz-orbits",         "non-splitting",           "component-stabilization",
        "k-complex",              "k-complex-degree-bound",  "homological-stability",
        "cohen-lenstra-measure",  "cohen-lenstra-moments",   "symplectic-orbits",
        "squarefree-count",       "function-field-moments",
    };
    return anchors;
}

void Table::add_row(std::vector<std::string> row)
{
    if (row.size() != columns.size())
        throw ValidationError("table " + name + ": row has " + std::to_string(row.size()) +
                              " fields, header has " + std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& c) const
{
    auto it = std::find(columns.begin(), columns.end(), c);
    if (it == columns.end())
        throw ValidationError("table " + name + " has no column " + c);
    return static_cast<std::size_t>(it - columns.begin());
}

const Table& Report::table(const std::string& name) const
{
    for (const auto& t : tables)
        if (t.name == name)
            return t;
    throw ValidationError("report " + kind + " has no table " + name);
}

std::string fmt(double x)
{
    if (std::isnan(x))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string to_csv(const Table& t)
{
    std::string out;
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (fields[i].find_first_of(",\n\"") != std::string::npos)
                throw ValidationError("CSV field needs quoting: " + fields[i]);
            if (i)
                out += ',';
            out += fields[i];
        }
        out += '\n';
    };
    line(t.columns);
    for (const auto& r : t.rows)
        line(r);
    return out;
}

nlohmann::json to_json(const Report& r)
{
    nlohmann::json j;
    j["kind"] = r.kind;
    j["version"] = kToolVersion;
    j["config"] = r.config;
    j["summary"] = r.summary;
    j["tables"] = nlohmann::json::array();
    for (const auto& t : r.tables)
        j["tables"].push_back({{"name", t.name},
                               {"anchor", t.anchor},
                               {"certification", t.certification},
                               {"columns", t.columns},
                               {"rows", t.rows}});
    return j;
}

Report report_from_json(const nlohmann::json& j)
{
    try {
        Report r;
        r.kind = j.at("kind").get<std::string>();
        r.config = j.at("config").get<std::map<std::string, std::string>>();
        r.summary = j.value("summary", nlohmann::json::object());
        for (const auto& t : j.at("tables")) {
            Table tab;
            tab.name = t.at("name").get<std::string>();
            tab.anchor = t.at("anchor").get<std::string>();
            tab.certification = t.at("certification").get<std::string>();
            tab.columns = t.at("columns").get<std::vector<std::string>>();
            for (const auto& row : t.at("rows"))
                tab.add_row(row.get<std::vector<std::string>>());
            r.tables.push_back(std::move(tab));
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed report: ") + e.what());
    }
}

Report load_report(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot read " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
    return report_from_json(j);
}

std::vector<fs::path> report_paths(const Report& r, const fs::path& dir)
{
    std::vector<fs::path> out{dir / (r.kind + ".json")};
    for (const auto& t : r.tables)
        out.push_back(dir / (r.kind + "_" + t.name + ".csv"));
    out.push_back(dir / (r.kind + "_timing.json"));
    return out;
}

std::vector<fs::path> write_report(const Report& r, const fs::path& dir, bool force)
{
    for (const auto& t : r.tables)
        if (std::find(known_anchors().begin(), known_anchors().end(), t.anchor) == known_anchors().end())
            throw ValidationError("table " + t.name + " has unknown anchor " + t.anchor);
    const auto paths = report_paths(r, dir);
    if (!force)
        for (const auto& p : paths)
            if (fs::exists(p))
                throw ValidationError(p.string() + " exists; pass --force to overwrite");

    std::vector<std::string> contents;
    contents.push_back(to_json(r).dump(2) + "\n");
    for (const auto& t : r.tables)
        contents.push_back(to_csv(t));
    nlohmann::json timing{{"kind", r.kind}, {"wall_seconds", r.wall_seconds}};
    contents.push_back(timing.dump(2) + "\n");

    std::vector<fs::path> temps, done;
    try {
        fs::create_directories(dir);
        for (std::size_t i = 0; i < paths.size(); ++i) {
            fs::path tmp = paths[i];
            tmp += ".tmp";
            temps.push_back(tmp);
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << contents[i];
            out.close();
            if (!out)
                throw ComputationError("failed writing " + tmp.string());
        }
        for (std::size_t i = 0; i < paths.size(); ++i) {
            fs::rename(temps[i], paths[i]);
            done.push_back(paths[i]);
        }
    } catch (...) {
        std::error_code ec;
        for (const auto& p : temps)
            fs::remove(p, ec);
        for (const auto& p : done)
            fs::remove(p, ec);
        throw;
    }
    return paths;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& experiment_kinds()
{
    static const std::vector<std::string> kinds = {"orbits",    "ring",     "kcomplex", "homology",
                                                   "cl-sample", "sp-check", "ff-census"};
    return kinds;
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const std::string& text)
{
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ValidationError("config line " + std::to_string(lineno) + ": empty key");
        if (key == "kind")
            cfg.kind = value;
        else if (key == "out_dir")
            cfg.out_dir = value;
        else if (key == "seed") {
            try {
                std::size_t used = 0;
                cfg.seed = std::stoull(value, &used);
                if (used != value.size() || value.find('-') != std::string::npos)
                    throw std::invalid_argument(value);
            } catch (const std::exception&) {
                throw ValidationError("config line " + std::to_string(lineno) + ": bad seed " + value);
            }
        } else if (!cfg.params.emplace(key, value).second)
            throw ValidationError("config line " + std::to_string(lineno) + ": duplicate key " + key);
    }
    if (!cfg.kind.empty() &&
        std::find(experiment_kinds().begin(), experiment_kinds().end(), cfg.kind) == experiment_kinds().end())
        throw ValidationError("unknown experiment kind " + cfg.kind);
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot read config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string ExperimentConfig::get(const std::string& key, const std::string& fallback) const
{
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

long ExperimentConfig::get_int(const std::string& key, long fallback) const
{
    auto it = params.find(key);
    if (it == params.end())
        return fallback;
    try {
        std::size_t used = 0;
        long v = std::stol(it->second, &used);
        if (used != it->second.size())
            throw std::invalid_argument(it->second);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(key + " must be an integer, got " + it->second);
    }
}

double ExperimentConfig::get_double(const std::string& key, double fallback) const
{
    auto it = params.find(key);
    if (it == params.end())
        return fallback;
    try {
        std::size_t used = 0;
        double v = std::stod(it->second, &used);
        if (used != it->second.size())
            throw std::invalid_argument(it->second);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(key + " must be a number, got " + it->second);
    }
}

bool ExperimentConfig::get_bool(const std::string& key, bool fallback) const
{
    auto it = params.find(key);
    if (it == params.end())
        return fallback;
    if (it->second == "true" || it->second == "1" || it->second == "yes")
        return true;
    if (it->second == "false" || it->second == "0" || it->second == "no")
        return false;
    throw ValidationError(key + " must be true or false, got " + it->second);
}

// ---------------------------------------------------------------------------

PlotKind parse_plot_kind(const std::string& text)
{
    if (text == "betti-vs-n")
        return PlotKind::betti_vs_n;
    if (text == "distribution-vs-mu")
        return PlotKind::distribution_vs_mu;
    if (text == "hq-vs-q")
        return PlotKind::hq_vs_q;
    throw ValidationError("unknown plot kind " + text);
}

namespace {

double to_number(const std::string& s)
{
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        throw ValidationError("non-numeric plot value " + s);
    }
}

// Fixed 640x400 canvas with a plot area and linear axes.
struct Canvas {
    double x0, x1, y0, y1;
    static constexpr double W = 640, H = 400, L = 70, R = 30, T = 40, B = 60;
    std::ostringstream out;

    Canvas(double xmin, double xmax, double ymin, double ymax) : x0(xmin), x1(xmax), y0(ymin), y1(ymax)
    {
        if (x1 <= x0)
            x1 = x0 + 1;
        if (y1 <= y0)
            y1 = y0 + 1;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
            << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }
    double px(double x) const { return L + (x - x0) / (x1 - x0) * (W - L - R); }
    double py(double y) const { return H - B - (y - y0) / (y1 - y0) * (H - T - B); }

    void axes(const std::string& title, const std::string& xlabel, const std::string& ylabel,
              const std::vector<std::pair<double, std::string>>& xticks)
    {
        out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
            << "</text>\n";
        out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
            << "\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
            << "\" stroke=\"black\"/>\n";
        for (const auto& [x, label] : xticks)
            out << "<text x=\"" << fmt(px(x)) << "\" y=\"" << H - B + 16
                << "\" text-anchor=\"middle\" font-size=\"11\">" << label << "</text>\n";
        for (int i = 0; i <= 4; ++i) {
            double y = y0 + (y1 - y0) * i / 4;
            out << "<text x=\"" << L - 6 << "\" y=\"" << fmt(py(y) + 4)
                << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(std::round(y * 1000) / 1000)
                << "</text>\n";
        }
        out << "<text x=\"" << W / 2 << "\" y=\"" << H - 18 << "\" text-anchor=\"middle\" font-size=\"12\">"
            << xlabel << "</text>\n";
        out << "<text x=\"16\" y=\"" << H / 2 << "\" text-anchor=\"middle\" font-size=\"12\" "
            << "transform=\"rotate(-90 16 " << H / 2 << ")\">" << ylabel << "</text>\n";
    }
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color)
    {
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (const auto& [x, y] : pts)
            out << fmt(px(x)) << "," << fmt(py(y)) << " ";
        out << "\"/>\n";
        for (const auto& [x, y] : pts)
            out << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y)) << "\" r=\"3\" fill=\"" << color
                << "\"/>\n";
    }
    void legend(const std::vector<std::pair<std::string, std::string>>& entries)
    {
        double y = T + 6;
        for (const auto& [label, color] : entries) {
            out << "<rect x=\"" << W - R - 150 << "\" y=\"" << y - 9 << "\" width=\"10\" height=\"10\" fill=\""
                << color << "\"/>\n";
            out << "<text x=\"" << W - R - 135 << "\" y=\"" << y << "\" font-size=\"11\">" << label
                << "</text>\n";
            y += 16;
        }
    }
    std::string finish()
    {
        out << "</svg>\n";
        return out.str();
    }
};

std::string anchor_of(const Table& t) { return "[" + t.anchor + "]"; }

}  // namespace

std::string plot_svg(const Report& r, PlotKind kind)
{
    switch (kind) {
    case PlotKind::betti_vs_n: {
        const Table& t = r.table("betti");
        if (t.rows.empty())
            throw ValidationError("betti-vs-n: empty window");
        std::vector<std::pair<double, double>> b0, b1;
        std::vector<std::pair<double, std::string>> ticks;
        double ymax = 0;
        for (const auto& row : t.rows) {
            double n = to_number(row[t.column("n")]);
            b0.emplace_back(n, to_number(row[t.column("b0")]));
            b1.emplace_back(n, to_number(row[t.column("b1")]));
            ymax = std::max({ymax, b0.back().second, b1.back().second});
            ticks.emplace_back(n, row[t.column("n")]);
        }
        Canvas c(b0.front().first, b0.back().first, 0, ymax * 1.1);
        c.axes("Betti numbers of the Hurwitz space " + anchor_of(t), "n (branch points)", "dim H_p", ticks);
        c.polyline(b0, "#1f77b4");
        c.polyline(b1, "#d62728");
        c.legend({{"b_0", "#1f77b4"}, {"b_1", "#d62728"}});
        return c.finish();
    }
    case PlotKind::distribution_vs_mu: {
        const Table& t = r.table("l_parts");
        if (t.rows.empty())
            throw ValidationError("distribution-vs-mu: no groups");
        const std::size_t m = t.rows.size();
        double ymax = 0;
        for (const auto& row : t.rows)
            ymax = std::max({ymax, to_number(row[t.column("empirical")]), to_number(row[t.column("mu")])});
        std::vector<std::pair<double, std::string>> ticks;
        for (std::size_t i = 0; i < m; ++i)
            ticks.emplace_back(double(i) + 0.5, t.rows[i][t.column("group")]);
        Canvas c(0, double(m), 0, ymax * 1.1);
        c.axes("Empirical l-part distribution against mu " + anchor_of(t), "group", "probability", ticks);
        for (std::size_t i = 0; i < m; ++i) {
            const double e = to_number(t.rows[i][t.column("empirical")]);
            const double mu = to_number(t.rows[i][t.column("mu")]);
            const double w = (c.px(1) - c.px(0)) * 0.35;
            c.out << "<rect x=\"" << fmt(c.px(double(i) + 0.5) - w) << "\" y=\"" << fmt(c.py(e))
                  << "\" width=\"" << fmt(w) << "\" height=\"" << fmt(c.py(0) - c.py(e))
                  << "\" fill=\"#1f77b4\"/>\n";
            c.out << "<rect x=\"" << fmt(c.px(double(i) + 0.5)) << "\" y=\"" << fmt(c.py(mu)) << "\" width=\""
                  << fmt(w) << "\" height=\"" << fmt(c.py(0) - c.py(mu)) << "\" fill=\"#ff7f0e\"/>\n";
        }
        c.legend({{"empirical", "#1f77b4"}, {"mu", "#ff7f0e"}});
        return c.finish();
    }
    case PlotKind::hq_vs_q: {
        const Table& t = r.table("degree_bound");
        std::vector<std::pair<double, double>> pts;
        std::vector<std::pair<double, std::string>> ticks;
        double offset = -1e300, qmax = 0, hmax = 0;
        for (const auto& row : t.rows) {
            if (row[t.column("h_q")].empty())
                continue;
            const double q = to_number(row[t.column("q")]), h = to_number(row[t.column("h_q")]);
            pts.emplace_back(q, h);
            ticks.emplace_back(q, row[t.column("q")]);
            offset = std::max(offset, h - q);
            qmax = std::max(qmax, q);
            hmax = std::max(hmax, h);
        }
        if (pts.empty())
            throw ValidationError("hq-vs-q: no nonzero homology columns");
        Canvas c(0, std::max(1.0, qmax), 0, std::max(hmax, qmax + offset) * 1.1 + 1);
        c.axes("Top degree h_q of K(M) " + anchor_of(t), "q", "h_q", ticks);
        c.out << "<line x1=\"" << fmt(c.px(0)) << "\" y1=\"" << fmt(c.py(offset)) << "\" x2=\""
              << fmt(c.px(qmax)) << "\" y2=\"" << fmt(c.py(qmax + offset))
              << "\" stroke=\"#999\" stroke-dasharray=\"5,4\"/>\n";
        for (const auto& [q, h] : pts)
            c.out << "<circle cx=\"" << fmt(c.px(q)) << "\" cy=\"" << fmt(c.py(h))
                  << "\" r=\"4\" fill=\"#2ca02c\"/>\n";
        c.legend({{"h_q", "#2ca02c"}, {"q + " + fmt(offset), "#999"}});
        return c.finish();
    }
    }
    throw ValidationError("unknown plot kind");
}

}  // namespace hurwitz
