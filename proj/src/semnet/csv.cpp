#include "semnet/harness/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace semnet {

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

namespace {

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open CSV for writing: " + path);
    return out;
}

std::string path_str(const std::vector<int>& hops) {
    std::string s;
    for (std::size_t i = 0; i < hops.size(); ++i) {
        if (i) s += '-';
        s += std::to_string(hops[i]);
    }
    return s;
}

}  // namespace

void write_decision_log(const SimOutput& out, const std::string& path) {
    auto f = open_csv(path);
    f << "time,msg_id,flow,scheme,source,S,C,U,R,z,class,fidelity,path,d_hat,j1,j2,cost,"
         "violation,routed\n";
    for (const auto& d : out.decisions) {
        f << csv_num(d.time) << ',' << d.message_id << ',' << d.flow << ','
          << scheme_name(out.scheme) << ',' << decision_source_name(d.source) << ','
          << csv_num(d.s_align) << ',' << csv_num(d.c_context) << ',' << csv_num(d.u_urgency)
          << ',' << csv_num(d.r) << ',' << csv_num(d.z) << ',' << class_name(d.cls) << ','
          << fidelity_name(d.fidelity) << ',' << path_str(d.path) << ',' << csv_num(d.d_hat)
          << ',' << csv_num(d.j1) << ',' << csv_num(d.j2) << ',' << csv_num(d.cost) << ','
          << (d.constraint_violated ? 1 : 0) << ',' << (d.routed ? 1 : 0) << '\n';
    }
}

void write_distortion_log(const SimOutput& out, const std::string& path) {
    auto f = open_csv(path);
    f << "time,msg_id,flow,R,d_hat,d_obs,gap,tolerance,action,f_before,f_after,f_temp\n";
    for (const auto& r : out.distortion) {
        f << csv_num(r.time) << ',' << r.message_id << ',' << r.flow_id << ',' << csv_num(r.r)
          << ',' << csv_num(r.d_hat) << ',' << csv_num(r.d_obs) << ',' << csv_num(r.gap) << ','
          << csv_num(r.tol) << ',' << action_name(r.action) << ',' << fidelity_name(r.f_before)
          << ',' << fidelity_name(r.f_after) << ',' << csv_num(r.f_temp) << '\n';
    }
}

void write_message_log(const SimOutput& out, const std::string& path) {
    auto f = open_csv(path);
    f << "msg_id,flow,task,created,size_bytes,R,class,fidelity,source,d_hat,terminal,"
         "delivered_time,d_obs\n";
    for (const auto& m : out.messages) {
        f << m.id << ',' << m.flow << ',' << m.task << ',' << csv_num(m.created) << ','
          << m.size_bytes << ',' << csv_num(m.r) << ',' << class_name(m.cls) << ','
          << fidelity_name(m.fidelity) << ',' << decision_source_name(m.source) << ','
          << csv_num(m.d_hat) << ',' << terminal_name(m.terminal) << ','
          << csv_num(m.delivered_time) << ',' << csv_num(m.d_obs) << '\n';
    }
}

std::vector<std::pair<std::string, double>> metric_rows(const RunMetrics& m) {
    return {
        {"sdsr", m.sdsr},
        {"mean_distortion", m.mean_distortion},
        {"p95_distortion", m.p95_distortion},
        {"mean_delay_s", m.mean_delay_s},
        {"p95_delay_s", m.p95_delay_s},
        {"reroute_per_flow_min", m.reroute_per_flow_min},
        {"throughput_Bps", m.throughput_Bps},
        {"goodput_Bps", m.goodput_Bps},
        {"stability_index", m.stability_index},
        {"highr_delay_relvar", m.highr_delay_relvar},
        {"stabilization_p2", static_cast<double>(m.stabilization_p2)},
        {"stabilization_p3", static_cast<double>(m.stabilization_p3)},
        {"correction_fraction", m.correction_fraction},
        {"generated_window", static_cast<double>(m.generated_window)},
        {"delivered_window", static_cast<double>(m.delivered_window)},
        {"lost_loss", static_cast<double>(m.lost_loss)},
        {"lost_break", static_cast<double>(m.lost_break)},
        {"dropped_no_route", static_cast<double>(m.dropped_no_route)},
        {"constraint_violations", static_cast<double>(m.constraint_violations)},
    };
}

void write_run_metrics(const RunMetrics& m, Scheme scheme, std::uint64_t seed,
                       const std::string& path) {
    auto f = open_csv(path);
    f << "scheme,seed,metric,value\n";
    for (const auto& [name, value] : metric_rows(m))
        f << scheme_name(scheme) << ',' << seed << ',' << name << ',' << csv_num(value) << '\n';
}

}  // namespace semnet
