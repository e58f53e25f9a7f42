#pragma once

#include <json.hpp>

#include <sstream>
#include <string>

#include "pipeline.hpp"

namespace repdiff {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline ordered_json config_json(const SolveConfig& c) {
    ordered_json j;
    j["r"] = c.r;
    j["s"] = c.s;
    j["base"] = c.base;
    j["min_k"] = c.min_k;
    j["allow_m_zero"] = c.allow_m_zero;
    j["mode"] = to_string(c.mode);
    j["precision"] = static_cast<long>(c.precision);
    return j;
}

inline ordered_json stage_json(const FamilyOutcome& f) {
    ordered_json j;
    j["q"] = f.worst.q.get_str();
    j["epsilon_min"] = f.epsilon_min.decimal(9);
    j["bound"] = f.bound;
    return j;
}

inline ordered_json solutions_json(const std::vector<Solution>& sols) {
    ordered_json arr = ordered_json::array();
    for (const Solution& s : sols) {
        ordered_json j;
        j["n"] = s.n;
        j["m"] = s.m;
        j["a"] = s.digit;
        j["k"] = s.length;
        j["value"] = s.value.get_str();
        arr.push_back(j);
    }
    return arr;
}

inline ordered_json bounds_json(const SolveReport& r) {
    ordered_json j;
    j["n_matveev"] = r.bounds.n_matveev.get_str();
    j["nm_reduced"] = r.nm_reduced;
    j["n_reduced"] = r.n_reduced;
    j["k_bound"] = r.bounds.k_bound_at_n.decimal(10);
    return j;
}

inline ordered_json bound_diagnostics_json(const BoundReport& b) {
    ordered_json j;
    j["c1"] = b.c1.decimal(10);
    j["c2"] = b.c2;
    j["h"] = b.h_value.decimal(10);
    j["m_cap"] = b.m_cap.get_str();
    j["nm_matveev"] = b.nm_matveev.get_str();
    j["fixed_point_c1"] = b.fixed_point_c1.decimal(10);
    j["fixed_point_h"] = b.fixed_point_h.decimal(10);
    j["gsl_within_10x"] = b.gsl_within_10x;
    return j;
}

} // namespace detail

inline std::string emit_report_json(const SolveReport& r) {
    ordered_json j;
    j["config"] = detail::config_json(r.config);
    j["bounds"] = detail::bounds_json(r);
    ordered_json red;
    red["lambda1"] = detail::stage_json(r.lambda1);
    red["lambda2"] = detail::stage_json(r.lambda2);
    j["reduction"] = red;
    if (r.enumerated) j["solutions"] = detail::solutions_json(r.solutions);
    ordered_json diag = detail::bound_diagnostics_json(r.bounds);
    diag["lambda1_guard"] = r.lambda1_guard;
    diag["lambda2_guard"] = r.lambda2_guard;
    diag["lambda1_advanced"] = r.lambda1.advanced;
    diag["lambda2_advanced"] = r.lambda2.advanced;
    if (r.enumerated) {
        bool all_nonzero = true, all_k = true;
        for (const SolutionDiagnostics& d : r.diagnostics) {
            all_nonzero = all_nonzero && d.gamma_nonzero;
            all_k = all_k && d.k_within_bound;
        }
        diag["linear_forms_nonzero"] = all_nonzero;
        diag["k_bounds_hold"] = all_k;
    }
    j["diagnostics"] = diag;
    j["timing_ms"] = r.timing_ms;
    return j.dump(2) + "\n";
}

inline std::string emit_bound_json(const SolveConfig& c, const BoundReport& b) {
    ordered_json j;
    j["config"] = detail::config_json(c);
    ordered_json bounds;
    bounds["n_matveev"] = b.n_matveev.get_str();
    bounds["k_bound"] = b.k_bound_at_n.decimal(10);
    j["bounds"] = bounds;
    j["diagnostics"] = detail::bound_diagnostics_json(b);
    return j.dump(2) + "\n";
}

inline std::string emit_search_json(const SolveConfig& c, unsigned long n_max,
                                    const std::vector<Solution>& sols) {
    ordered_json j;
    j["config"] = detail::config_json(c);
    j["n_max"] = n_max;
    j["solutions"] = detail::solutions_json(sols);
    return j.dump(2) + "\n";
}

inline std::string emit_report_text(const SolveReport& r) {
    std::ostringstream os;
    os << "sequence: r=" << r.config.r << " s=" << r.config.s << " base=" << r.config.base
       << " mode=" << to_string(r.config.mode) << " precision=" << r.config.precision << "\n";
    os << "first-stage bound: n <= " << r.bounds.n_matveev.get_str()
       << " (k <= " << r.bounds.k_bound_at_n.decimal(6) << ")\n";
    os << "reduced bounds: n - m <= " << r.nm_reduced << ", n <= " << r.n_reduced << "\n";
    os << "lambda1: q = " << r.lambda1.worst.q.get_str()
       << ", eps_min = " << r.lambda1.epsilon_min.decimal(9) << ", bound = " << r.lambda1.bound
       << " (" << r.lambda1.size << " instances, " << r.lambda1.advanced << " advanced)\n";
    os << "lambda2: q = " << r.lambda2.worst.q.get_str()
       << ", eps_min = " << r.lambda2.epsilon_min.decimal(9) << ", bound = " << r.lambda2.bound
       << " (" << r.lambda2.size << " instances, " << r.lambda2.advanced << " advanced)\n";
    if (r.enumerated) {
        os << "solutions (" << r.solutions.size() << "):\n";
        os << "  n\tm\ta\tk\tvalue\n";
        for (const Solution& s : r.solutions)
            os << "  " << s.n << "\t" << s.m << "\t" << s.digit << "\t" << s.length << "\t"
               << s.value.get_str() << "\n";
        bool all_ok = true;
        for (const SolutionDiagnostics& d : r.diagnostics)
            all_ok = all_ok && d.gamma_nonzero && d.k_within_bound;
        os << (all_ok ? "certificates: all linear forms nonzero, all k bounds hold\n"
                      : "certificates: FAILED\n");
    }
    os << "timing: " << r.timing_ms << " ms\n";
    return os.str();
}

inline std::string emit_bound_text(const SolveConfig& c, const BoundReport& b) {
    std::ostringstream os;
    os << "sequence: r=" << c.r << " s=" << c.s << " base=" << c.base
       << " mode=" << to_string(b.mode) << "\n";
    os << "n <= " << b.n_matveev.get_str() << "\n";
    os << "k <= " << b.k_bound_at_n.decimal(6) << "\n";
    os << "c1 = " << b.c1.decimal(6) << ", c2 = " << b.c2 << ", H = " << b.h_value.decimal(6)
       << "\n";
    os << "reduction cap M = " << b.m_cap.get_str() << "\n";
    os << "first-stage n - m bound: " << b.nm_matveev.get_str() << "\n";
    return os.str();
}

inline std::string emit_search_text(const SolveConfig& c, unsigned long n_max,
                                    const std::vector<Solution>& sols) {
    std::ostringstream os;
    os << "sequence: r=" << c.r << " s=" << c.s << " base=" << c.base << ", n <= " << n_max
       << "\n";
    os << "solutions (" << sols.size() << "):\n";
    os << "  n\tm\ta\tk\tvalue\n";
    for (const Solution& s : sols)
        os << "  " << s.n << "\t" << s.m << "\t" << s.digit << "\t" << s.length << "\t"
           << s.value.get_str() << "\n";
    return os.str();
}

} // namespace repdiff
