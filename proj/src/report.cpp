#include "growthlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "growthlab/errors.hpp"

namespace growthlab {

bool Report::all_pass() const {
    if (status != "ok") return false;
    for (const ExpectationResult& r : expectations)
        if (!r.pass) return false;
    return true;
}

void Report::add(std::string name, double value, std::optional<Complex> argmax) {
    quantities.push_back(Quantity{std::move(name), value, argmax});
}

bool Report::check(const Expectation& e, double measured) {
    ExpectationResult r;
    r.expected = e;
    r.measured = measured;
    r.pass = e.kind == Expectation::Kind::Equal ? std::abs(measured - e.value) <= e.tol
                                                : measured <= e.value + e.tol;
    expectations.push_back(r);
    return r.pass;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["schema"] = 1;
    j["scenario"] = scenario;
    j["status"] = status;
    if (!error.empty()) j["error"] = error;
    j["grid"] = {{"rings", grid_rings}, {"angular_factor", angular_factor}};
    j["counts"] = counts;
    j["labels"] = labels;
    nlohmann::json qs = nlohmann::json::array();
    for (const Quantity& q : quantities) {
        nlohmann::json one{{"name", q.name}, {"value", q.value}};
        if (q.argmax) {
            one["argmax_re"] = q.argmax->real();
            one["argmax_im"] = q.argmax->imag();
        }
        qs.push_back(std::move(one));
    }
    j["quantities"] = std::move(qs);
    nlohmann::json es = nlohmann::json::array();
    for (const ExpectationResult& r : expectations) {
        es.push_back({{"quantity", r.expected.quantity},
                      {"expected", r.expected.value},
                      {"tol", r.expected.tol},
                      {"kind", r.expected.kind == Expectation::Kind::Equal ? "eq" : "le"},
                      {"measured", r.measured},
                      {"pass", r.pass},
                      {"note", r.expected.note}});
    }
    j["expectations"] = std::move(es);
    j["all_pass"] = all_pass();
    return j;
}

std::string Report::csv_header() { return "scenario,quantity,value,argmax_re,argmax_im,grid_rings,pass\n"; }

void Report::append_csv(std::string& out) const {
    for (const Quantity& q : quantities) {
        std::string pass;
        for (const ExpectationResult& r : expectations)
            if (r.expected.quantity == q.name) pass = r.pass ? "true" : "false";
        out += scenario + "," + q.name + "," + fmt_double(q.value) + ",";
        out += q.argmax ? fmt_double(q.argmax->real()) : std::string();
        out += ",";
        out += q.argmax ? fmt_double(q.argmax->imag()) : std::string();
        out += "," + std::to_string(grid_rings) + "," + pass + "\n";
    }
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open output file " + tmp.string());
        out << content;
        if (!out.flush()) throw ConfigError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string svg_heatmap(const DiscGrid& grid, const std::vector<std::vector<double>>& ring_values,
                        const std::string& title) {
    const int size = 760;
    const double c = size / 2.0;
    const double scale = 0.47 * size;
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(size) + "\" height=\"" +
           std::to_string(size + 40) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"12\" y=\"20\" font-family=\"monospace\" font-size=\"14\">" + title + "</text>\n";

    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (const auto& ring : ring_values)
        for (double v : ring) {
            if (!std::isfinite(v)) continue;
            const double L = std::log10(std::max(v, 1e-300));
            if (!any) {
                lo = hi = L;
                any = true;
            } else {
                lo = std::min(lo, L);
                hi = std::max(hi, L);
            }
        }
    if (!any || hi - lo < 1e-9) hi = lo + 1.0;

    for (std::size_t i = 0; i < grid.rings.size() && i < ring_values.size(); ++i) {
        const Ring& ring = grid.rings[i];
        if (ring.r == 0.0) continue;
        // Ring band thickness from the neighbors.
        double r_in = ring.r, r_out = ring.r;
        if (i > 0) r_in = 0.5 * (grid.rings[i - 1].r + ring.r);
        if (i + 1 < grid.rings.size()) r_out = 0.5 * (ring.r + grid.rings[i + 1].r);
        if (i == grid.rings.size() - 1) r_out = 1.0;
        const int shown = static_cast<int>(ring_values[i].size());
        if (shown == 0) continue;
        for (int t = 0; t < shown; ++t) {
            const double v = ring_values[i][static_cast<std::size_t>(t)];
            if (!std::isfinite(v)) continue;
            const double L = std::log10(std::max(v, 1e-300));
            const double u = std::clamp((L - lo) / (hi - lo), 0.0, 1.0);
            const int red = static_cast<int>(255 * u);
            const int blue = static_cast<int>(255 * (1.0 - u));
            const double th0 = 2.0 * M_PI * t / shown;
            const double th1 = 2.0 * M_PI * (t + 1) / shown;
            const auto px = [&](double r, double th) {
                return std::to_string(c + scale * r * std::cos(th)) + "," +
                       std::to_string(c + 30 - scale * r * std::sin(th));
            };
            svg += "<path d=\"M" + px(r_in, th0) + " L" + px(r_out, th0) + " A" + std::to_string(scale * r_out) +
                   "," + std::to_string(scale * r_out) + " 0 0 0 " + px(r_out, th1) + " L" + px(r_in, th1) +
                   " Z\" fill=\"rgb(" + std::to_string(red) + ",40," + std::to_string(blue) +
                   ")\" stroke=\"none\"/>\n";
        }
    }
    svg += "<text x=\"12\" y=\"" + std::to_string(size + 32) + "\" font-family=\"monospace\" font-size=\"12\">log10 range [" +
           std::to_string(lo) + ", " + std::to_string(hi) + "]</text>\n";
    svg += "</svg>\n";
    return svg;
}

} // namespace growthlab
