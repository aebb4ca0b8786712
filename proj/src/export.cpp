#include "critom/export.hpp"

#include "critom/errors.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace critom {

std::string format_double(double v) {
    char buf[40];
    // %.17g round-trips any double; trim to the shortest representation that
    // still round-trips so the files stay readable.
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v)
            return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string provenance_header(const Provenance &prov) {
    std::ostringstream out;
    out << "# critom " << kToolVersion << "\n";
    if (!prov.command_line.empty())
        out << "# command: " << prov.command_line << "\n";
    if (!prov.params.empty()) {
        out << "# params:";
        for (const auto &[k, v] : prov.params)
            out << " " << k << "=" << format_double(v);
        out << "\n";
    }
    return out.str();
}

std::string steady_csv(const Provenance &prov, const std::vector<ClassifiedState> &states) {
    std::ostringstream out;
    out << provenance_header(prov);
    out << "root,x_s,re_a_s,im_a_s,re_b_s,im_b_s,delta_eff,stability,margin\n";
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto &s = states[i];
        out << i << "," << format_double(s.state.x_s) << ","
            << format_double(s.state.a_s.real()) << "," << format_double(s.state.a_s.imag())
            << "," << format_double(s.state.b_s.real()) << ","
            << format_double(s.state.b_s.imag()) << "," << format_double(s.state.delta_eff)
            << "," << to_string(s.report.kind) << "," << format_double(s.report.margin) << "\n";
    }
    return out.str();
}

std::string region_map_csv(const Provenance &prov, const RegionMap &map) {
    std::ostringstream out;
    out << provenance_header(prov);
    out << "Delta,I_in,root_count,region,solver_failed\n";
    for (std::size_t j = 0; j < map.iin_grid.size(); ++j) {
        for (std::size_t i = 0; i < map.delta_grid.size(); ++i) {
            const auto &c = map.at(i, j);
            out << format_double(map.delta_grid[i]) << "," << format_double(map.iin_grid[j])
                << "," << c.root_count << "," << to_string(c.region) << ","
                << (c.solver_failed ? 1 : 0) << "\n";
        }
    }
    return out.str();
}

std::string boundary_csv(const Provenance &prov, const std::vector<BoundaryCurve> &curves) {
    std::ostringstream out;
    out << provenance_header(prov);
    out << "curve,kind,Delta,I_in\n";
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const char *kind = curves[c].kind == BoundaryKind::SaddleNode ? "saddle_node" : "hopf";
        for (const auto &pt : curves[c].points)
            out << c << "," << kind << "," << format_double(pt.Delta) << ","
                << format_double(pt.I_in) << "\n";
    }
    return out.str();
}

std::string branch_csv(const Provenance &prov, const std::vector<BranchCurve> &curves) {
    std::ostringstream out;
    out << provenance_header(prov);
    out << "branch,label,closed,Delta,x_s,T,stability\n";
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const char *label = curves[c].label == BranchLabel::Isola ? "isola" : "main";
        for (const auto &pt : curves[c].points)
            out << c << "," << label << "," << (curves[c].closed ? 1 : 0) << ","
                << format_double(pt.Delta) << "," << format_double(pt.x_s) << ","
                << format_double(pt.T) << "," << to_string(pt.stability) << "\n";
    }
    return out.str();
}

std::string hysteresis_csv(const Provenance &prov, const std::vector<HysteresisPoint> &up,
                           const std::vector<HysteresisPoint> &down) {
    std::ostringstream out;
    out << provenance_header(prov);
    out << "direction,Delta,x_s,stability,jumped\n";
    for (const auto &pt : up)
        out << "up," << format_double(pt.Delta) << "," << format_double(pt.x_s) << ","
            << to_string(pt.stability) << "," << (pt.jumped ? 1 : 0) << "\n";
    for (const auto &pt : down)
        out << "down," << format_double(pt.Delta) << "," << format_double(pt.x_s) << ","
            << to_string(pt.stability) << "," << (pt.jumped ? 1 : 0) << "\n";
    return out.str();
}

std::string trajectory_csv(const Provenance &prov, const Trajectory &traj) {
    std::ostringstream out;
    out << provenance_header(prov);
    out << "t,x,p,X_a,Y_a,X_b,Y_b\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        out << format_double(traj.times[i]);
        for (double v : traj.states[i])
            out << "," << format_double(v);
        out << "\n";
    }
    return out.str();
}

std::string phase_portrait_csv(const Provenance &prov, const Trajectory &traj) {
    std::ostringstream out;
    out << provenance_header(prov);
    out << "x,p\n";
    for (const auto &s : traj.states)
        out << format_double(s[0]) << "," << format_double(s[1]) << "\n";
    return out.str();
}

std::string spectrum_csv(const Provenance &prov, const std::vector<SpectrumPoint> &points) {
    std::ostringstream out;
    out << provenance_header(prov);
    out << "Delta,branch,x_s,T,phase,stability\n";
    for (const auto &pt : points)
        out << format_double(pt.Delta) << "," << pt.branch << "," << format_double(pt.x_s) << ","
            << format_double(pt.T) << "," << format_double(pt.phase) << ","
            << to_string(pt.stability) << "\n";
    return out.str();
}

std::string psd_csv(const Provenance &prov, const PsdReport &report) {
    std::ostringstream out;
    out << provenance_header(prov);
    out << "omega,S_shot,S_th,S_total,sensitivity\n";
    for (const auto &pt : report.points)
        out << format_double(pt.omega) << "," << format_double(pt.S_shot) << ","
            << format_double(pt.S_th) << "," << format_double(pt.S_total) << ","
            << format_double(pt.sensitivity) << "\n";
    return out.str();
}

std::string json_envelope(const Provenance &prov, const std::string &kind,
                          const std::string &payload_json) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"tool\": \"critom\",\n";
    out << "  \"version\": \"" << kToolVersion << "\",\n";
    out << "  \"command\": \"";
    for (char ch : prov.command_line) {
        if (ch == '"' || ch == '\\')
            out << '\\';
        out << ch;
    }
    out << "\",\n";
    out << "  \"params\": {";
    for (std::size_t i = 0; i < prov.params.size(); ++i) {
        if (i)
            out << ", ";
        out << "\"" << prov.params[i].first << "\": " << format_double(prov.params[i].second);
    }
    out << "},\n";
    out << "  \"kind\": \"" << kind << "\",\n";
    out << "  \"data\": " << payload_json << "\n";
    out << "}\n";
    return out.str();
}

void write_text_file(const std::string &path, const std::string &content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::trunc | std::ios::binary);
    if (!out)
        throw Error("cannot open for writing: " + path);
    out << content;
}

} // namespace critom
