#include <rover/report.hpp>

#include <rover/errors.hpp>
#include <rover/format.hpp>
#include <rover/metrics.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rover {
namespace {

constexpr scalar_t kRadToDeg = 180.0 / 3.14159265358979323846;

const char* verdict_color(ScenarioOutcome::Verdict verdict) {
    switch (verdict) {
    case ScenarioOutcome::Verdict::Success: return "#3fa34d";
    case ScenarioOutcome::Verdict::SemiSuccess: return "#f2c438";
    case ScenarioOutcome::Verdict::Failure: return "#d1483d";
    }
    return "#d1483d";
}

std::string row_label(ScenarioKind kind, scalar_t parameter) {
    if (kind == ScenarioKind::Slope) return format_number(parameter * kRadToDeg) + " deg";
    return format_number(parameter * 100.0) + " cm";
}

std::string scenario_label(ScenarioKind kind, scalar_t parameter) {
    switch (kind) {
    case ScenarioKind::Step: return format_number(parameter * 100.0) + "-cm step";
    case ScenarioKind::Rock: return format_number(parameter * 100.0) + "-cm rock";
    case ScenarioKind::Outcrop: return format_number(parameter * 100.0) + "-cm outcrop";
    case ScenarioKind::Slope: return format_number(parameter * kRadToDeg) + "-deg slope";
    case ScenarioKind::FlatRun: return "flat run";
    }
    return "";
}

std::string svg_text(scalar_t x, scalar_t y, const std::string& text,
                     const char* anchor = "middle", int size = 11) {
    std::ostringstream out;
    out << "<text x=\"" << format_fixed(x, 1) << "\" y=\"" << format_fixed(y, 1)
        << "\" font-family=\"sans-serif\" font-size=\"" << size << "\" text-anchor=\""
        << anchor << "\">" << text << "</text>\n";
    return out.str();
}

struct GridIndex {
    std::vector<scalar_t> parameters;  // ascending
    std::vector<scalar_t> speeds;      // ascending
    std::vector<SuspensionMode> modes; // DR, IE, MHS order as present
    std::map<std::tuple<long, long, int>, const SweepCell*> cells;

    static long quantize(scalar_t v) { return std::lround(v * 1e6); }

    const SweepCell& at(scalar_t parameter, scalar_t speed, SuspensionMode mode) const {
        const auto it = cells.find({quantize(parameter), quantize(speed),
                                    static_cast<int>(mode)});
        if (it == cells.end()) {
            throw IncompleteGrid("missing sweep cell at parameter=" +
                                 format_number(parameter) + " speed=" + format_number(speed));
        }
        return *it->second;
    }
};

GridIndex index_cells(const SweepResult& result, ScenarioKind kind) {
    GridIndex index;
    std::map<long, scalar_t> parameters;
    std::map<long, scalar_t> speeds;
    std::set<int> modes;
    for (const SweepCell& cell : result.cells) {
        if (cell.spec.kind != kind) continue;
        const auto key = std::make_tuple(GridIndex::quantize(cell.spec.parameter),
                                         GridIndex::quantize(cell.spec.speed),
                                         static_cast<int>(cell.spec.mode));
        if (!index.cells.emplace(key, &cell).second) {
            throw IncompleteGrid("duplicate sweep cell for " + to_string(kind));
        }
        parameters.emplace(std::get<0>(key), cell.spec.parameter);
        speeds.emplace(std::get<1>(key), cell.spec.speed);
        modes.insert(std::get<2>(key));
    }
    if (index.cells.empty()) {
        throw IncompleteGrid("no sweep cells for module " + to_string(kind));
    }
    for (const auto& [key, value] : parameters) index.parameters.push_back(value);
    for (const auto& [key, value] : speeds) index.speeds.push_back(value);
    for (int m : {0, 1, 2}) {
        if (modes.count(m)) index.modes.push_back(static_cast<SuspensionMode>(m));
    }
    // Completeness: every combination must exist.
    for (scalar_t p : index.parameters) {
        for (scalar_t s : index.speeds) {
            for (SuspensionMode m : index.modes) index.at(p, s, m);
        }
    }
    return index;
}

} // namespace

void emit_heatmap(const SweepResult& result, ScenarioKind kind, const std::string& out_dir) {
    const GridIndex grid = index_cells(result, kind);
    std::filesystem::create_directories(out_dir);

    const int rows = static_cast<int>(grid.parameters.size());
    const int cols = static_cast<int>(grid.speeds.size());
    const scalar_t cell_w = 42.0;
    const scalar_t cell_h = 22.0;
    const scalar_t label_w = 64.0;
    const scalar_t panel_w = label_w + cols * cell_w + 16.0;
    const scalar_t top = 44.0;
    const scalar_t bottom = 40.0;
    const scalar_t width = panel_w * grid.modes.size();
    const scalar_t height = top + rows * cell_h + bottom;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_fixed(width, 0)
        << "\" height=\"" << format_fixed(height, 0) << "\" viewBox=\"0 0 "
        << format_fixed(width, 0) << ' ' << format_fixed(height, 0) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t m = 0; m < grid.modes.size(); ++m) {
        const scalar_t x0 = m * panel_w + label_w;
        svg << svg_text(x0 + cols * cell_w * 0.5, 18.0,
                        to_string(grid.modes[m]) + " / " + to_string(kind), "middle", 13);
        for (int r = 0; r < rows; ++r) {
            // Largest obstacle on the top row.
            const scalar_t parameter = grid.parameters[rows - 1 - r];
            if (m == 0) {
                svg << svg_text(label_w - 6.0, top + r * cell_h + cell_h * 0.7,
                                row_label(kind, parameter), "end");
            }
            for (int c = 0; c < cols; ++c) {
                const SweepCell& cell = grid.at(parameter, grid.speeds[c], grid.modes[m]);
                svg << "<rect x=\"" << format_fixed(x0 + c * cell_w, 1) << "\" y=\""
                    << format_fixed(top + r * cell_h, 1) << "\" width=\""
                    << format_fixed(cell_w - 2.0, 1) << "\" height=\""
                    << format_fixed(cell_h - 2.0, 1) << "\" fill=\""
                    << verdict_color(cell.outcome.verdict) << "\"/>\n";
            }
        }
        for (int c = 0; c < cols; ++c) {
            svg << svg_text(x0 + c * cell_w + cell_w * 0.5 - 1.0, top + rows * cell_h + 16.0,
                            format_number(grid.speeds[c]));
        }
        svg << svg_text(x0 + cols * cell_w * 0.5, top + rows * cell_h + 32.0, "speed [m/s]");
    }
    svg << "</svg>\n";

    const std::filesystem::path dir(out_dir);
    {
        std::ofstream out(dir / ("heatmap_" + to_string(kind) + ".svg"));
        out << svg.str();
    }

    // Grid CSVs label slope rows in degrees, everything else in metres.
    for (SuspensionMode mode : grid.modes) {
        std::ofstream out(dir / ("heatmap_" + to_string(kind) + "_" + to_string(mode) +
                                 ".csv"));
        out << (kind == ScenarioKind::Slope ? "angle_deg" : "parameter");
        for (scalar_t s : grid.speeds) out << ',' << format_number(s);
        out << '\n';
        for (int r = rows - 1; r >= 0; --r) {
            const scalar_t parameter = grid.parameters[r];
            out << format_number(kind == ScenarioKind::Slope ? parameter * kRadToDeg
                                                             : parameter);
            for (scalar_t s : grid.speeds) {
                out << ',' << to_string(grid.at(parameter, s, mode).outcome.verdict);
            }
            out << '\n';
        }
    }
}

void emit_max_table(const SweepResult& result,
                    const std::vector<std::pair<ScenarioKind, scalar_t>>& scenarios,
                    scalar_t speed, const std::string& csv_path) {
    const std::vector<SuspensionMode> modes = {SuspensionMode::DR, SuspensionMode::IE,
                                               SuspensionMode::MHS};
    auto find_cell = [&result](ScenarioKind kind, scalar_t parameter, scalar_t speed_,
                               SuspensionMode mode) -> const SweepCell& {
        for (const SweepCell& cell : result.cells) {
            if (cell.spec.kind == kind && cell.spec.mode == mode &&
                std::abs(cell.spec.parameter - parameter) < 1e-9 &&
                std::abs(cell.spec.speed - speed_) < 1e-9) {
                return cell;
            }
        }
        throw IncompleteGrid("missing " + to_string(mode) + " summary for " +
                             scenario_label(kind, parameter));
    };

    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot open table file for writing: " + csv_path);
    out << "module";
    for (const char* metric : {"f", "t", "acc"}) {
        for (SuspensionMode mode : modes) {
            out << ',' << metric << '_' << to_string(mode);
        }
        out << ',' << metric << "_rate_pct," << metric << "_best";
    }
    out << '\n';

    for (const auto& [kind, parameter] : scenarios) {
        out << scenario_label(kind, parameter);
        for (int metric = 0; metric < 3; ++metric) {
            std::vector<scalar_t> values;
            for (SuspensionMode mode : modes) {
                const MetricsSummary& s = find_cell(kind, parameter, speed, mode).metrics;
                values.push_back(metric == 0   ? s.max_vertical_load
                                 : metric == 1 ? s.max_pitch_torque
                                               : s.max_acceleration);
            }
            for (scalar_t v : values) out << ',' << format_number(v);
            out << ',' << reduction_rate(values);
            std::size_t best = 0;
            for (std::size_t k = 1; k < values.size(); ++k) {
                if (values[k] <= values[best]) best = k;  // ties go to the later mode
            }
            out << ',' << to_string(modes[best]);
        }
        out << '\n';
    }
}

void emit_accel_plot(const std::vector<SimulationTrace>& traces,
                     const std::vector<std::string>& labels, const std::string& svg_path) {
    if (traces.empty()) throw EmptyTrace("emit_accel_plot: no traces");
    for (const SimulationTrace& trace : traces) {
        if (trace.records.empty()) throw EmptyTrace("emit_accel_plot: empty trace");
    }

    const scalar_t width = 900.0;
    const scalar_t height = 320.0;
    const scalar_t ml = 62.0, mr = 110.0, mt = 18.0, mb = 42.0;
    const scalar_t plot_w = width - ml - mr;
    const scalar_t plot_h = height - mt - mb;

    scalar_t t_max = 0.0;
    scalar_t y_min = traces.front().records.front().vertical_acceleration_g;
    scalar_t y_max = y_min;
    for (const SimulationTrace& trace : traces) {
        t_max = std::max(t_max, trace.duration());
        for (const TraceRecord& rec : trace.records) {
            y_min = std::min(y_min, rec.vertical_acceleration_g);
            y_max = std::max(y_max, rec.vertical_acceleration_g);
        }
    }
    if (t_max <= 0.0) t_max = 1.0;
    if (y_max - y_min < 1e-6) {
        y_max += 0.5;
        y_min -= 0.5;
    }
    const scalar_t pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;

    auto sx = [&](scalar_t t) { return ml + t / t_max * plot_w; };
    auto sy = [&](scalar_t y) { return mt + (y_max - y) / (y_max - y_min) * plot_h; };

    const char* palette[6] = {"#4477aa", "#ee6677", "#228833",
                              "#ccbb44", "#66ccee", "#aa3377"};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_fixed(width, 0)
        << "\" height=\"" << format_fixed(height, 0) << "\" viewBox=\"0 0 "
        << format_fixed(width, 0) << ' ' << format_fixed(height, 0) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << format_fixed(ml, 1) << "\" y=\"" << format_fixed(mt, 1)
        << "\" width=\"" << format_fixed(plot_w, 1) << "\" height=\""
        << format_fixed(plot_h, 1) << "\" fill=\"none\" stroke=\"#444444\"/>\n";

    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const scalar_t t = t_max * i / ticks;
        const scalar_t y = y_min + (y_max - y_min) * i / ticks;
        svg << "<line x1=\"" << format_fixed(sx(t), 1) << "\" y1=\""
            << format_fixed(mt + plot_h, 1) << "\" x2=\"" << format_fixed(sx(t), 1)
            << "\" y2=\"" << format_fixed(mt + plot_h + 4.0, 1)
            << "\" stroke=\"#444444\"/>\n";
        svg << svg_text(sx(t), mt + plot_h + 18.0, format_fixed(t, 2));
        svg << "<line x1=\"" << format_fixed(ml - 4.0, 1) << "\" y1=\""
            << format_fixed(sy(y), 1) << "\" x2=\"" << format_fixed(ml, 1) << "\" y2=\""
            << format_fixed(sy(y), 1) << "\" stroke=\"#444444\"/>\n";
        svg << svg_text(ml - 8.0, sy(y) + 4.0, format_fixed(y, 2), "end");
    }
    if (y_min < 0.0 && y_max > 0.0) {
        svg << "<line x1=\"" << format_fixed(ml, 1) << "\" y1=\"" << format_fixed(sy(0.0), 1)
            << "\" x2=\"" << format_fixed(ml + plot_w, 1) << "\" y2=\""
            << format_fixed(sy(0.0), 1) << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
    }
    svg << svg_text(ml + plot_w * 0.5, height - 8.0, "time [s]");
    svg << svg_text(14.0, mt + plot_h * 0.5, "vertical acceleration [g]", "middle", 11)
        << "\n";

    for (std::size_t k = 0; k < traces.size(); ++k) {
        const SimulationTrace& trace = traces[k];
        const std::size_t stride =
            std::max<std::size_t>(1, trace.records.size() / 2000);
        svg << "<polyline fill=\"none\" stroke=\"" << palette[k % 6]
            << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t n = 0; n < trace.records.size(); n += stride) {
            const TraceRecord& rec = trace.records[n];
            svg << format_fixed(sx(rec.state.time), 1) << ','
                << format_fixed(sy(rec.vertical_acceleration_g), 1) << ' ';
        }
        svg << "\"/>\n";
        const std::string label = k < labels.size() ? labels[k] : "trace " + std::to_string(k);
        svg << "<line x1=\"" << format_fixed(ml + plot_w + 10.0, 1) << "\" y1=\""
            << format_fixed(mt + 14.0 + 18.0 * k, 1) << "\" x2=\""
            << format_fixed(ml + plot_w + 30.0, 1) << "\" y2=\""
            << format_fixed(mt + 14.0 + 18.0 * k, 1) << "\" stroke=\"" << palette[k % 6]
            << "\" stroke-width=\"2\"/>\n";
        svg << svg_text(ml + plot_w + 36.0, mt + 18.0 + 18.0 * k, label, "start");
    }
    svg << "</svg>\n";

    std::ofstream out(svg_path);
    if (!out) throw std::runtime_error("cannot open plot file for writing: " + svg_path);
    out << svg.str();
}

std::string grid_monotonicity_report(const SweepResult& result, ScenarioKind kind) {
    const GridIndex grid = index_cells(result, kind);
    std::ostringstream out;
    out << "monotonicity[" << to_string(kind) << "]:";
    for (SuspensionMode mode : grid.modes) {
        int successes = 0;
        int monotone = 0;
        for (scalar_t speed : grid.speeds) {
            for (std::size_t r = 0; r < grid.parameters.size(); ++r) {
                if (grid.at(grid.parameters[r], speed, mode).outcome.verdict !=
                    ScenarioOutcome::Verdict::Success) {
                    continue;
                }
                ++successes;
                bool ok = true;
                for (std::size_t lower = 0; lower < r; ++lower) {
                    if (grid.at(grid.parameters[lower], speed, mode).outcome.verdict ==
                        ScenarioOutcome::Verdict::Failure) {
                        ok = false;
                    }
                }
                if (ok) ++monotone;
            }
        }
        out << ' ' << to_string(mode) << '='
            << (successes > 0 ? format_fixed(100.0 * monotone / successes, 0) : "100")
            << "% (" << monotone << '/' << successes << ')';
    }
    return out.str();
}

} // namespace rover
