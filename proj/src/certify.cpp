#include "polyid/certify.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <future>
#include <sstream>

namespace polyid {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

json rat_map_to_json(const std::map<std::string, Rat>& m) {
    json j = json::object();
    for (const auto& [k, v] : m) j[k] = v.str_fraction();
    return j;
}

}  // namespace

std::string Verdict::kind_str() const {
    switch (kind) {
        case Kind::GenericallyIdentifiable: return "GenericallyIdentifiable";
        case Kind::Inconclusive: return "Inconclusive";
        case Kind::Refuted: return "Refuted";
    }
    return "?";
}

std::string Certificate::to_json(bool include_timing) const {
    json j;
    j["schema_version"] = schema_version;
    j["system_id"] = system_id;
    j["witness"] = rat_map_to_json(witness);
    j["expected_count"] = expected_count;
    json a1;
    a1["checked"] = assumption1.checked;
    a1["ok"] = assumption1.ok;
    a1["templates_verified"] = assumption1.templates_verified;
    a1["all_distinct"] = assumption1.all_distinct;
    a1["degenerate_draws_skipped"] = assumption1.degenerate_draws_skipped;
    if (!assumption1.note.empty()) a1["note"] = assumption1.note;
    j["assumption1"] = a1;
    json a2;
    a2["mode"] = assumption2.mode;
    if (assumption2.bad_set_size) a2["bad_set_size"] = *assumption2.bad_set_size;
    if (assumption2.witness_avoids) a2["witness_avoids"] = *assumption2.witness_avoids;
    if (assumption2.vanishing) a2["vanishing"] = *assumption2.vanishing;
    if (assumption2.zero_dimensional)
        a2["zero_dimensional"] = *assumption2.zero_dimensional;
    if (assumption2.degree) a2["degree"] = *assumption2.degree;
    j["assumption2"] = a2;
    json v;
    v["kind"] = verdict.kind_str();
    if (verdict.kind == Verdict::Kind::GenericallyIdentifiable) v["count"] = verdict.count;
    if (!verdict.reason.empty()) v["reason"] = verdict.reason;
    j["verdict"] = v;
    json ru;
    ru["pair_count"] = resource_usage.pair_count;
    ru["wall_seconds"] = include_timing ? resource_usage.wall_seconds : 0.0;
    j["resource_usage"] = ru;
    if (!notes.empty()) j["notes"] = notes;
    return j.dump(2);
}

Certificate certify(const ParametricSystem& sys, const std::map<std::string, Rat>& witness,
                    const CertifyLimits& limits) {
    auto t0 = Clock::now();
    Certificate cert;
    cert.system_id = sys.id;
    cert.witness = witness;
    cert.expected_count = sys.expected_count;
    cert.notes = sys.notes;

    auto finish = [&](Verdict v) {
        cert.verdict = std::move(v);
        cert.resource_usage.wall_seconds = seconds_since(t0);
        return cert;
    };
    auto inconclusive = [&](const std::string& reason) {
        return finish({Verdict::Kind::Inconclusive, 0, reason});
    };

    // ---- Stage 1: Assumption 1 (solution templates) ----
    Assumption1Report& a1 = cert.assumption1;
    if (sys.templates.empty()) {
        a1.note = "no solution templates provided";
        return inconclusive("assumption 1 unverifiable: no solution templates");
    }
    a1.checked = true;
    a1.all_distinct = true;

    std::mt19937_64 rng(limits.seed);
    auto verify_at = [&](const std::map<std::string, Rat>& params,
                         bool required) -> std::optional<std::string> {
        // Returns an error description, nullopt on success; "degenerate"
        // draws are reported via the special string "#degenerate" unless
        // required.
        std::vector<std::map<std::string, Rat>> sols;
        for (const auto& tpl : sys.templates) {
            auto sol = tpl.eval(params);
            if (!sol) {
                if (required) return "template '" + tpl.id + "' degenerate at the witness";
                return "#degenerate";
            }
            sols.push_back(std::move(*sol));
        }
        std::vector<Polynomial> inst = sys.instantiate(params, MonomialOrder::grevlex());
        for (std::size_t k = 0; k < sols.size(); ++k) {
            if (!verify_exact_solution(inst, sols[k]))
                return "template '" + sys.templates[k].id +
                       "' does not satisfy the instantiated system";
            ++a1.templates_verified;
        }
        for (std::size_t i = 0; i < sols.size(); ++i)
            for (std::size_t j = i + 1; j < sols.size(); ++j)
                if (sols[i] == sols[j]) a1.all_distinct = false;
        return std::nullopt;
    };

    if (auto err = verify_at(witness, true)) {
        a1.note = *err;
        return inconclusive("assumption 1 failed at the witness: " + *err);
    }
    int extra_done = 0;
    int redraw_guard = 0;
    while (sys.draw_params && extra_done < limits.extra_draws) {
        auto params = sys.draw_params(rng);
        auto err = verify_at(params, false);
        if (err && *err == "#degenerate") {
            ++a1.degenerate_draws_skipped;
            if (++redraw_guard > 50 * limits.extra_draws)
                return inconclusive("assumption 1: persistent degenerate draws");
            continue;
        }
        if (err) {
            a1.note = *err;
            return inconclusive("assumption 1 failed at a random draw: " + *err);
        }
        ++extra_done;
    }
    if (!sys.draw_params && limits.extra_draws > 0)
        a1.note = "no domain sampler; templates verified at the witness only";
    if (!a1.all_distinct)
        return inconclusive("assumption 1: solution templates are not pairwise distinct");
    a1.ok = true;

    // ---- Stage 2: parametric basis and bad set ----
    Assumption2Report& a2 = cert.assumption2;
    bool avoidance_established = false;
    if (limits.attempt_parametric) {
        GroebnerLimits gl{limits.parametric_gb_pairs, limits.parametric_gb_seconds};
        GroebnerResult gr = buchberger(sys.generators, sys.order, gl);
        cert.resource_usage.pair_count += gr.stats.pairs_processed;
        if (gr.ok()) {
            GroebnerBasis rgb = reduce_basis(gr.basis);
            BadSet bad = extract_bad_set(rgb);
            a2.mode = "parametric";
            a2.bad_set_size = bad.polys.size();
            BadSetCheck chk = avoids_bad_set(witness, bad);
            a2.witness_avoids = chk.avoids;
            if (!chk.avoids) {
                a2.vanishing = chk.vanishing->str();
                return inconclusive(
                    "witness hits the bad set (vanishing coefficient: " + *a2.vanishing +
                    "); choose a different witness");
            }
            avoidance_established = true;
        } else {
            a2.mode = "witness_level";
            cert.notes.push_back(
                "parametric basis hit resource limits; bad-set avoidance not established "
                "(witness-level certificate)");
        }
    } else {
        a2.mode = "witness_level";
        cert.notes.push_back("parametric stage disabled; witness-level certificate");
    }

    // ---- Stage 3: instantiated dimension/degree ----
    std::vector<Polynomial> inst = sys.instantiate(witness, MonomialOrder::grevlex());
    if (inst.empty())
        return inconclusive("instantiated system is identically zero");
    GroebnerLimits il{limits.instantiated_gb_pairs, limits.instantiated_gb_seconds};
    GroebnerResult gi = buchberger(inst, MonomialOrder::grevlex(), il);
    cert.resource_usage.pair_count += gi.stats.pairs_processed;
    if (!gi.ok())
        return inconclusive("instantiated basis hit resource limits");
    GroebnerBasis rgi = reduce_basis(gi.basis);
    bool zd = is_zero_dimensional(rgi);
    a2.zero_dimensional = zd;
    if (!zd) {
        if (avoidance_established)
            return finish({Verdict::Kind::Refuted, 0,
                           "positive-dimensional at a bad-set-avoiding witness"});
        return inconclusive("positive-dimensional at the witness");
    }
    std::uint64_t deg = degree(rgi);
    a2.degree = deg;
    if (deg != cert.expected_count) {
        std::string detail = "degree " + std::to_string(deg) + " != expected " +
                             std::to_string(cert.expected_count);
        if (avoidance_established)
            return finish({Verdict::Kind::Refuted, 0, detail + " at an avoiding witness"});
        return inconclusive(detail + " (bad-set avoidance not established)");
    }
    if (!avoidance_established)
        return inconclusive(
            "witness-level checks passed (dimension 0, degree " + std::to_string(deg) +
            "); bad-set avoidance not established");
    return finish({Verdict::Kind::GenericallyIdentifiable, cert.expected_count, ""});
}

bool SuiteReport::all_match() const {
    return std::all_of(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.match; });
}

std::string SuiteReport::to_json(bool include_timing) const {
    json j;
    j["schema_version"] = schema_version;
    json rows_j = json::array();
    for (const auto& r : rows) {
        json row;
        row["system_id"] = r.system_id;
        row["expected"] = {{"dim", r.expected_dim}, {"degree", r.expected_degree}};
        json comp = json::object();
        if (r.computed_dim) comp["dim"] = *r.computed_dim;
        if (r.computed_degree) comp["degree"] = *r.computed_degree;
        row["computed"] = comp;
        row["match"] = r.match;
        row["runtime_seconds"] = include_timing ? r.runtime_seconds : 0.0;
        row["parametric_status"] = r.parametric_status;
        if (r.bad_set_size) row["bad_set_size"] = *r.bad_set_size;
        if (r.witness_avoids) row["witness_avoids"] = *r.witness_avoids;
        if (!r.note.empty()) row["note"] = r.note;
        rows_j.push_back(row);
    }
    j["rows"] = rows_j;
    j["all_match"] = all_match();
    return j.dump(2);
}

std::string SuiteReport::to_table() const {
    std::ostringstream os;
    os << "system                      expected    computed    match  runtime_s\n";
    for (const auto& r : rows) {
        std::ostringstream exp, comp;
        exp << "(" << r.expected_dim << "," << r.expected_degree << ")";
        if (r.computed_dim && r.computed_degree)
            comp << "(" << *r.computed_dim << "," << *r.computed_degree << ")";
        else
            comp << "(-,-)";
        os << r.system_id;
        for (std::size_t k = r.system_id.size(); k < 28; ++k) os << ' ';
        os << exp.str() << "       " << comp.str() << "       "
           << (r.match ? "yes" : "NO") << "    " << r.runtime_seconds;
        if (r.parametric_status != "not_attempted")
            os << "  [parametric: " << r.parametric_status << "]";
        os << "\n";
    }
    return os.str();
}

namespace {

struct SuiteCase {
    ModelKind kind;
    int n;
    std::uint64_t expected_degree;
};

std::vector<SuiteCase> suite_cases() {
    return {
        {ModelKind::known(Model::BTL, Rat(7, 10)), 5, 3},
        {ModelKind::unknown(Model::BTL), 5, 2},
        {ModelKind::known(Model::MNL3, Rat(3, 10)), 4, 1},
        {ModelKind::unknown(Model::MNL3), 4, 2},
        {ModelKind::known(Model::PL, Rat(7, 10)), 4, 1},
        {ModelKind::unknown(Model::PL), 4, 2},
        {ModelKind::known(Model::MNL23, Rat(7, 10)), 3, 1},
        {ModelKind::unknown(Model::MNL23), 4, 2},
    };
}

SuiteRow run_suite_case(const SuiteCase& sc, const CertifyLimits& limits) {
    auto t0 = Clock::now();
    SuiteRow row;
    row.expected_dim = 0;
    row.expected_degree = sc.expected_degree;
    ParametricSystem sys = build_parametric(sc.kind, sc.n);
    row.system_id = sys.id;
    MixtureParams mp = suite_witness(sc.kind);
    auto witness = parameter_assignment(sc.kind, mp);

    std::vector<Polynomial> inst = sys.instantiate(witness, MonomialOrder::grevlex());
    GroebnerLimits il{limits.instantiated_gb_pairs, limits.instantiated_gb_seconds};
    GroebnerResult gr = buchberger(inst, MonomialOrder::grevlex(), il);
    if (!gr.ok()) {
        row.note = "instantiated basis hit resource limits";
        row.runtime_seconds = seconds_since(t0);
        return row;
    }
    GroebnerBasis rgb = reduce_basis(gr.basis);
    bool zd = is_zero_dimensional(rgb);
    row.computed_dim = zd ? 0 : 1;
    if (zd) row.computed_degree = degree(rgb);
    row.match = zd && row.computed_degree && *row.computed_degree == sc.expected_degree;

    if (limits.attempt_parametric) {
        GroebnerLimits pl{limits.parametric_gb_pairs, limits.parametric_gb_seconds};
        GroebnerResult pgr = buchberger(sys.generators, sys.order, pl);
        if (pgr.ok()) {
            row.parametric_status = "completed";
            BadSet bad = extract_bad_set(reduce_basis(pgr.basis));
            row.bad_set_size = bad.polys.size();
            row.witness_avoids = avoids_bad_set(witness, bad).avoids;
        } else {
            row.parametric_status = "timeout";
        }
    }
    row.runtime_seconds = seconds_since(t0);
    return row;
}

}  // namespace

SuiteReport run_paper_suite(const CertifyLimits& limits, bool concurrent) {
    SuiteReport report;
    auto cases = suite_cases();
    if (concurrent) {
        std::vector<std::future<SuiteRow>> futs;
        futs.reserve(cases.size());
        for (const auto& sc : cases)
            futs.push_back(std::async(std::launch::async,
                                      [&limits, sc] { return run_suite_case(sc, limits); }));
        for (auto& f : futs) report.rows.push_back(f.get());
    } else {
        for (const auto& sc : cases) report.rows.push_back(run_suite_case(sc, limits));
    }
    std::sort(report.rows.begin(), report.rows.end(),
              [](const SuiteRow& a, const SuiteRow& b) { return a.system_id < b.system_id; });
    return report;
}

std::string InductionAuditReport::to_json() const {
    json j;
    j["schema_version"] = 1;
    j["kind"] = kind;
    j["seed"] = seed;
    j["n_range"] = {n_lo, n_hi};
    j["trials_per_n"] = trials_per_n;
    j["total_trials"] = total_trials;
    j["failures"] = failures;
    j["degenerate_excluded"] = degenerate_excluded;
    j["failure_details"] = failure_details;
    return j.dump(2);
}

InductionAuditReport induction_audit(const ModelKind& kind, int n_max, int trials,
                                     std::uint64_t seed) {
    InductionAuditReport rep;
    rep.kind = kind.str();
    rep.seed = seed;
    rep.n_lo = min_items(kind) + 1;
    rep.n_hi = n_max;
    rep.trials_per_n = trials;
    if (n_max < rep.n_lo)
        throw std::invalid_argument("induction_audit: n_max below the base case");

    std::mt19937_64 rng(seed);
    auto describe = [](const MixtureParams& mp) {
        std::ostringstream os;
        os << "a=(";
        for (std::size_t i = 0; i < mp.a.size(); ++i)
            os << (i ? "," : "") << mp.a[i].str();
        os << ") b=(";
        for (std::size_t i = 0; i < mp.b.size(); ++i)
            os << (i ? "," : "") << mp.b[i].str();
        os << ") p1=" << mp.p1.str();
        return os.str();
    };

    const bool audit_swapped = kind.model == Model::PL && !kind.known_p;
    for (int n = rep.n_lo; n <= n_max; ++n) {
        for (int trial = 0; trial < trials; ++trial) {
            MixtureParams mp = random_params(kind, n, rng);
            for (int branch = 0; branch < (audit_swapped ? 2 : 1); ++branch) {
                bool swapped = branch == 1;
                InductionStep st = induction_step_matrix(kind, mp, swapped);
                ++rep.total_trials;
                // Consistency: the ground truth must satisfy the system.
                Rat lhs0 = st.A[0][0] * st.truth[0] + st.A[0][1] * st.truth[1];
                Rat lhs1 = st.A[1][0] * st.truth[0] + st.A[1][1] * st.truth[1];
                if (lhs0 != st.rhs[0] || lhs1 != st.rhs[1]) {
                    ++rep.failures;
                    rep.failure_details.push_back("inconsistent step at n=" +
                                                  std::to_string(n) + " " + describe(mp));
                    continue;
                }
                if (st.degenerate) {
                    if (mp.a == mp.b) {
                        ++rep.degenerate_excluded;
                        rep.failure_details.push_back("degenerate draw (a = b) at n=" +
                                                      std::to_string(n));
                    } else {
                        ++rep.failures;
                        rep.failure_details.push_back("zero determinant at n=" +
                                                      std::to_string(n) + " " +
                                                      describe(mp));
                    }
                    continue;
                }
                Rat x = (st.rhs[0] * st.A[1][1] - st.rhs[1] * st.A[0][1]) / st.det;
                Rat y = (st.A[0][0] * st.rhs[1] - st.A[1][0] * st.rhs[0]) / st.det;
                if (x != st.truth[0] || y != st.truth[1]) {
                    ++rep.failures;
                    rep.failure_details.push_back("extension mismatch at n=" +
                                                  std::to_string(n) + " " + describe(mp));
                }
            }
        }
    }
    return rep;
}

}  // namespace polyid
