#include "ramlim/job.hpp"

#include <sstream>

#include <json.hpp>

#include "ramlim/errors.hpp"
#include "ramlim/limits.hpp"
#include "ramlim/oracle.hpp"

namespace ramlim {

using Json = nlohmann::ordered_json;

namespace {

// --- parsing ------------------------------------------------------------------

Factorization parse_factors(const Json& arr) {
    Factorization fac;
    for (const auto& item : arr) {
        if (item.is_array() && item.size() == 2)
            fac.factors.emplace_back(parse_poly(item[0].get<std::string>()),
                                     item[1].get<int>());
        else
            fac.factors.emplace_back(parse_poly(item.at("poly").get<std::string>()),
                                     item.value("mult", 1));
    }
    return fac;
}

JobSpec parse_job_impl(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("job JSON: ") + e.what(), 0);
    }
    JobSpec job;
    try {
        for (const auto& s : j.at("family"))
            job.family.push_back(parse_poly(s.get<std::string>()));
        if (job.family.empty()) throw ParseError("empty family", 0);

        if (j.contains("factors")) job.factors = parse_factors(j["factors"]);
        if (j.contains("zeuthen")) {
            ZeuthenSplit z;
            for (const auto& s : j["zeuthen"].at("E"))
                z.e_components.factors.emplace_back(
                    parse_poly(s.get<std::string>()), 1);
            z.a = parse_poly(j["zeuthen"].at("A").get<std::string>());
            job.zeuthen = std::move(z);
        }

        const Json& sys = j.at("system");
        if (sys.contains("pencil")) {
            const Json& p = sys["pencil"];
            if (p.is_string() && p.get<std::string>() == "random") {
                job.pencil_random = true;
            } else {
                RationalPoint r;
                for (int i = 0; i < 3; ++i)
                    r[static_cast<std::size_t>(i)] =
                        p.at(static_cast<std::size_t>(i)).is_number()
                            ? Rational(p[static_cast<std::size_t>(i)].get<long>())
                            : rational_from_string(
                                  p[static_cast<std::size_t>(i)].get<std::string>());
                job.pencil_point = r;
            }
        } else if (sys.contains("basis")) {
            for (const auto& entry : sys["basis"]) {
                std::vector<HPoly> coeffs;
                if (entry.is_string()) {
                    coeffs.push_back(parse_poly(entry.get<std::string>()));
                } else {
                    for (const auto& c : entry)
                        coeffs.push_back(parse_poly(c.get<std::string>()));
                }
                job.basis.push_back(std::move(coeffs));
            }
            if (job.basis.empty()) throw ParseError("empty system basis", 0);
        } else {
            throw ParseError("system needs \"pencil\" or \"basis\"", 0);
        }

        if (j.contains("options")) {
            const Json& o = j["options"];
            job.options.order = o.value("order", job.options.order);
            job.options.order_cap = o.value("order_cap", job.options.order_cap);
            job.options.trials = o.value("trials", job.options.trials);
            job.options.seed = o.value("seed", job.options.seed);
            job.options.engine = o.value("engine", job.options.engine);
            job.options.verify = o.value("verify", job.options.verify);
            job.options.equiv_depth = o.value("equiv_depth", job.options.equiv_depth);
        }
        if (job.options.order < 2) job.options.order = 2;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("job JSON: ") + e.what(), 0);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 0);
    }
    return job;
}

// --- serialization --------------------------------------------------------------

Json cycle_to_json(const CycleExpr& c) {
    Json terms = Json::array();
    for (const auto& t : c.terms) {
        Json entry;
        entry["mult"] = to_string(t.mult);
        if (const auto* in = std::get_if<IntersectionTerm>(&t.node)) {
            entry["kind"] = "intersection";
            entry["P"] = to_string(in->p);
            entry["Q"] = to_string(in->q);
        } else {
            const auto& ram = std::get<RamTerm>(t.node);
            entry["kind"] = "ramification";
            entry["P"] = to_string(ram.p);
            Json basis = Json::array();
            for (const auto& b : ram.basis) basis.push_back(to_string(b));
            entry["V"] = std::move(basis);
        }
        terms.push_back(std::move(entry));
    }
    Json out;
    out["terms"] = std::move(terms);
    out["degree"] = to_string(cycle_degree(c));
    return out;
}

Json verdict_to_json(const VerifyReport& rep) {
    Json out;
    out["verdict"] = to_string(rep.verdict);
    Json trials = Json::array();
    for (const auto& t : rep.trials) {
        Json entry;
        entry["order_used"] = t.order_used;
        entry["valuation"] = t.valuation;
        entry["match"] = t.match;
        trials.push_back(std::move(entry));
    }
    out["trials"] = std::move(trials);
    if (!rep.witness.empty()) out["witness"] = rep.witness;
    return out;
}

Json matrix_to_json(const CoordChange& m) {
    Json rows = Json::array();
    for (const auto& row : m.matrix()) {
        Json r = Json::array();
        for (const auto& entry : row) r.push_back(to_string(entry));
        rows.push_back(std::move(r));
    }
    return rows;
}

Json inputs_to_json(const JobSpec& job) {
    Json in;
    Json family = Json::array();
    for (const auto& f : job.family) family.push_back(to_string(f));
    in["family"] = std::move(family);
    if (job.factors) {
        Json fs = Json::array();
        for (const auto& [e, mult] : job.factors->factors) {
            Json entry;
            entry["poly"] = to_string(e);
            entry["mult"] = mult;
            fs.push_back(std::move(entry));
        }
        in["factors"] = std::move(fs);
    }
    if (job.zeuthen) {
        Json z;
        Json es = Json::array();
        for (const auto& [e, mult] : job.zeuthen->e_components.factors)
            es.push_back(to_string(e));
        z["E"] = std::move(es);
        z["A"] = to_string(job.zeuthen->a);
        in["zeuthen"] = std::move(z);
    }
    Json opts;
    opts["order"] = job.options.order;
    opts["trials"] = job.options.trials;
    opts["seed"] = job.options.seed;
    opts["engine"] = job.options.engine;
    in["options"] = std::move(opts);
    return in;
}

// --- shared machinery --------------------------------------------------------

struct PreparedSystem {
    VFamily v;
    std::optional<RationalPoint> pencil_point;
    std::vector<HPoly> pencil_basis;
};

std::vector<HPoly> guard_polys(const JobSpec& job) {
    std::vector<HPoly> avoid;
    for (const auto& f : job.family)
        if (!f.is_zero()) avoid.push_back(f);
    if (job.factors)
        for (const auto& [e, mult] : job.factors->factors) avoid.push_back(e);
    if (job.zeuthen) {
        for (const auto& [e, mult] : job.zeuthen->e_components.factors)
            avoid.push_back(e);
        if (!job.zeuthen->a.is_constant()) avoid.push_back(job.zeuthen->a);
    }
    return avoid;
}

PreparedSystem prepare_system(const JobSpec& job, int order) {
    PreparedSystem out;
    if (!job.basis.empty()) {
        std::vector<HSeries> raw;
        for (const auto& coeffs : job.basis)
            raw.push_back(make_series(coeffs, order));
        out.v = saturate_basis(std::move(raw));
        return out;
    }
    const auto avoid = guard_polys(job);
    RationalPoint r;
    Rng rng(job.options.seed ^ 0x9e3779b97f4a7c15ULL);
    if (job.pencil_point) {
        r = *job.pencil_point;
    } else {
        // draw a point off every declared curve
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 512)
                throw HypothesisError("no pencil point off the declared curves");
            for (auto& c : r) c = Rational(rng.uniform(-9, 9));
            if (r[0] == 0 && r[1] == 0 && r[2] == 0) continue;
            bool ok = true;
            for (const auto& p : avoid)
                if (eval_at(p, r) == 0) ok = false;
            if (ok) break;
        }
    }
    const LinearSystem pencil = pencil_through_point(r, avoid, rng.fork());
    std::vector<HSeries> raw;
    for (const auto& b : pencil.basis) raw.push_back(HSeries::constant(b, order));
    out.v = saturate_basis(std::move(raw));
    out.pencil_point = r;
    out.pencil_basis = pencil.basis;
    return out;
}

std::string engine_choice(const JobSpec& job) {
    if (job.options.engine != "auto") return job.options.engine;
    if (job.zeuthen) return "zeuthen";
    const HPoly f0 = job.family[0];
    const HPoly f1 = job.family.size() > 1 ? job.family[1] : HPoly();
    if (!f1.is_zero() && is_coprime(f0, f1)) return "general";
    return "quasi";
}

Factorization require_factors(const JobSpec& job) {
    if (job.factors) return *job.factors;
    if (job.zeuthen) {
        // assemble F0 = prod E_j^2 * A from the split
        Factorization fac;
        for (const auto& [e, mult] : job.zeuthen->e_components.factors)
            fac.factors.emplace_back(e, 2);
        if (!job.zeuthen->a.is_constant())
            fac.factors.emplace_back(job.zeuthen->a, 1);
        return fac;
    }
    throw HypothesisError("this engine needs a declared factorization of F0");
}

struct EngineRun {
    std::string engine;
    CycleExpr cycle;
    std::vector<ZeuthenFactorData> zeuthen;
    std::vector<std::string> warnings;
    std::vector<std::string> transcript;
    int verified_order = 0;
    int order_used = 0;
};

EngineRun run_engine(const JobSpec& job, const PreparedSystem& sys) {
    EngineRun run;
    run.engine = engine_choice(job);
    const int base_order =
        std::max({job.options.order, static_cast<int>(job.family.size()) + 1, 3});
    const HSeries f = make_series(job.family, base_order);
    run.order_used = base_order;

    if (run.engine == "general") {
        const Factorization fac = require_factors(job);
        run.cycle = limit_general_direction(f, fac, sys.v);
        run.transcript.push_back("gcd(F0, F1) = 1: ok");
        run.transcript.push_back("V(0) nondegenerate on every factor: ok");
    } else if (run.engine == "quasi") {
        const Factorization fac = require_factors(job);
        run.cycle = limit_quasi_general(f, fac, sys.v);
        run.transcript.push_back("gcd(E_i, F1) = 1 for multiple factors: ok");
        run.transcript.push_back("V(0) nondegenerate on every factor: ok");
    } else if (run.engine == "zeuthen") {
        if (!job.zeuthen)
            throw HypothesisError("zeuthen engine needs the E/A split");
        // auto-extend the truncation for the type search
        int order = base_order;
        for (;;) {
            const HSeries fe = make_series(job.family, order);
            try {
                ZeuthenResult res =
                    limit_zeuthen(fe, job.zeuthen->e_components, job.zeuthen->a,
                                  sys.v, order - 1);
                run.cycle = std::move(res.cycle);
                run.zeuthen = std::move(res.factors);
                run.warnings = std::move(res.warnings);
                run.order_used = order;
                break;
            } catch (const TruncationExhausted&) {
                if (order >= job.options.order_cap) throw;
                order = std::min(order * 2, job.options.order_cap);
            }
        }
        run.transcript.push_back("F0 = E^2 A with E, A square-free and coprime: ok");
        run.transcript.push_back("every component acquired a finite type: ok");
        run.transcript.push_back("V(0) nondegenerate on every component: ok");
    } else if (run.engine == "adapted") {
        Rng rng(job.options.seed ^ 0xada9'7ed0'13b1'77ffULL);
        const HPoly f0 = f.coeff[0];
        HPoly h;
        for (int attempt = 0;; ++attempt) {
            if (attempt > 256)
                throw HypothesisError("no auxiliary curve prime to F0");
            h = random_linear_form(rng, 4);
            if (is_coprime(h, f0)) break;
        }
        const int r1 = static_cast<int>(sys.v.basis.size());
        if (job.zeuthen) {
            int order = base_order;
            for (;;) {
                const HSeries fe = make_series(job.family, order);
                try {
                    std::vector<ZeuthenFactorData> zs;
                    for (const auto& [e, mult] :
                         job.zeuthen->e_components.factors)
                        zs.push_back(zeuthen_discriminants(fe, e, order - 1));
                    const AdaptationData ad = zeuthen_adaptation(
                        fe, job.zeuthen->e_components, job.zeuthen->a, zs, h);
                    const Factorization full = require_factors(job);
                    AdaptedResult res =
                        limit_adapted(fe, full, sys.v, ad, job.options.equiv_depth);
                    run.cycle = res.cycle +
                                zeuthen_auxiliary_cycle(fe, h, r1).scaled(
                                    Rational(-1));
                    run.warnings = std::move(res.warnings);
                    run.verified_order = res.verified_order;
                    run.zeuthen = std::move(zs);
                    run.order_used = order;
                    break;
                } catch (const TruncationExhausted&) {
                    if (order >= job.options.order_cap) throw;
                    order = std::min(order * 2, job.options.order_cap);
                }
            }
            run.transcript.push_back(
                "component-wise engine with the squared-factor adaptation (p=2)");
        } else {
            const Factorization fac = require_factors(job);
            const AdaptationData ad = quasi_adaptation(f, fac, h);
            AdaptedResult res =
                limit_adapted(f, fac, sys.v, ad, job.options.equiv_depth);
            run.cycle = res.cycle + quasi_auxiliary_cycle(f, fac, h, r1).scaled(
                                        Rational(-1));
            run.warnings = std::move(res.warnings);
            run.verified_order = res.verified_order;
            run.transcript.push_back(
                "component-wise engine with the direction adaptation (p=1)");
        }
        run.transcript.push_back("auxiliary cycle subtracted: " + to_string(h));
    } else {
        throw ParseError("unknown engine: " + run.engine, 0);
    }
    return run;
}

Json zeuthen_to_json(const std::vector<ZeuthenFactorData>& zs) {
    Json arr = Json::array();
    for (const auto& z : zs) {
        Json entry;
        entry["factor"] = to_string(z.ej);
        entry["B"] = to_string(z.bj);
        entry["type"] = z.type;
        Json deltas = Json::array();
        for (const auto& d : z.deltas) deltas.push_back(to_string(d));
        entry["deltas"] = std::move(deltas);
        Json reduced = Json::array();
        for (const auto& d : z.deltas_reduced) reduced.push_back(to_string(d));
        entry["deltas_reduced"] = std::move(reduced);
        arr.push_back(std::move(entry));
    }
    return arr;
}

int map_exception(const std::exception& e, std::string& message) {
    message = e.what();
    if (dynamic_cast<const ParseError*>(&e)) return 1;
    if (dynamic_cast<const TruncationExhausted*>(&e)) return 4;
    if (dynamic_cast<const HypothesisError*>(&e)) return 2;
    if (dynamic_cast<const InvalidFactorization*>(&e)) return 2;
    if (dynamic_cast<const InvariantViolation*>(&e)) return 2;
    if (dynamic_cast<const DegenerateProjection*>(&e)) return 2;
    if (dynamic_cast<const InexactDivision*>(&e)) return 2;
    return 1;
}

CommandResult failure(const std::exception& e) {
    CommandResult res;
    std::string message;
    res.exit_code = map_exception(e, message);
    res.human = "error: " + message + "\n";
    Json j;
    j["error"] = message;
    j["exit"] = res.exit_code;
    res.json = j.dump(2) + "\n";
    return res;
}

std::string render_point(const RationalPoint& r) {
    return "(" + to_string(r[0]) + " : " + to_string(r[1]) + " : " +
           to_string(r[2]) + ")";
}

} // namespace

JobSpec parse_job(const std::string& json_text) { return parse_job_impl(json_text); }

CommandResult cmd_ramification(const JobSpec& job) {
    try {
        if (job.family.size() != 1)
            throw HypothesisError("ramification expects a single-curve family");
        const HPoly f0 = job.family[0];
        const PreparedSystem sys = prepare_system(job, 2);
        const LinearSystem ls = make_linear_system(sys.v.at_zero());
        const CycleExpr cycle = ramification_cycle(f0, ls);

        Rng rng(job.options.seed ^ 0xc4a11edULL);
        const HPoly auxq = draw_aux_linear({&cycle}, rng);
        ChowForm chow;
        CoordChange m = CoordChange::identity();
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 50)
                throw DegenerateProjection("no usable projection in 50 draws");
            m = random_coord_change(rng.fork(), 4);
            try {
                chow = realize_chow(cycle, m, auxq);
                break;
            } catch (const DegenerateProjection&) {
            }
        }

        Json rep;
        rep["command"] = "ramification";
        rep["inputs"] = inputs_to_json(job);
        if (sys.pencil_point)
            rep["pencil_point"] = render_point(*sys.pencil_point);
        rep["cycle"] = cycle_to_json(cycle);
        rep["chow"] = {{"form", to_string(chow.form)},
                       {"clearing", chow.clearing},
                       {"coordinate_change", matrix_to_json(m)}};

        std::ostringstream human;
        human << "ramification cycle of " << to_string(f0) << "\n";
        if (sys.pencil_point)
            human << "  pencil through " << render_point(*sys.pencil_point) << "\n";
        human << "  cycle:  " << to_string(cycle) << "\n";
        human << "  degree: " << to_string(cycle_degree(cycle)) << "\n";
        human << "  chow form (under reported coordinate change): "
              << to_string(chow.form) << "\n";

        CommandResult res;
        res.human = human.str();
        res.json = rep.dump(2) + "\n";
        return res;
    } catch (const std::exception& e) {
        return failure(e);
    }
}

namespace {

CommandResult limit_like(const JobSpec& job, bool dual) {
    try {
        if (job.family.size() < 2 && job.options.engine == "auto")
            throw HypothesisError(
                "limit expects a degenerating family (or an explicit engine)");
        if (dual && job.basis.size() > 0)
            throw HypothesisError("dual-limit expects a pencil system");
        const PreparedSystem sys = prepare_system(job, job.options.order);
        EngineRun run = run_engine(job, sys);

        Json rep;
        rep["command"] = dual ? "dual-limit" : "limit";
        rep["engine"] = run.engine;
        rep["inputs"] = inputs_to_json(job);
        rep["hypotheses"] = run.transcript;
        if (!run.zeuthen.empty()) rep["zeuthen"] = zeuthen_to_json(run.zeuthen);
        rep["cycle"] = cycle_to_json(run.cycle);
        rep["order_used"] = run.order_used;
        if (run.verified_order > 0)
            rep["equivalences_verified_to_order"] = run.verified_order;
        if (!run.warnings.empty()) rep["warnings"] = run.warnings;

        std::ostringstream human;
        human << (dual ? "limit of dual curves" : "limit ramification cycle")
              << " via the " << run.engine << " engine\n";
        for (const auto& z : run.zeuthen)
            human << "  component " << to_string(z.ej) << ": type " << z.type
                  << ", B = " << to_string(z.bj) << ", Delta_" << z.type << " = "
                  << to_string(z.deltas.back()) << "\n";

        DualSliceReport slice;
        if (dual) {
            std::vector<std::pair<HPoly, int>> components;
            if (job.zeuthen) {
                for (const auto& [e, mult] : job.zeuthen->e_components.factors)
                    components.emplace_back(e, 2);
                if (!job.zeuthen->a.is_constant())
                    components.emplace_back(job.zeuthen->a, 1);
            } else {
                for (const auto& [e, mult] : require_factors(job).factors)
                    components.emplace_back(e, mult);
            }
            if (!sys.pencil_point)
                throw HypothesisError("dual-limit expects a pencil system");
            slice = dual_slice(run.cycle, components, *sys.pencil_point);
            Json comps = Json::array();
            for (const auto& [e, mult] : slice.component_duals) {
                Json entry;
                entry["curve"] = to_string(e);
                entry["mult"] = mult;
                entry["dual_degree"] = e.deg() * (e.deg() - 1);
                comps.push_back(std::move(entry));
            }
            rep["component_duals"] = std::move(comps);
            rep["point_cycle"] = cycle_to_json(slice.point_cycle);
            rep["pencil_point"] = render_point(slice.pencil_point);
            rep["dual_total_degree"] = slice.total_degree;

            human << "  limit dual curve (degree " << slice.total_degree << "):\n";
            for (const auto& [e, mult] : slice.component_duals)
                human << "    " << mult << " * dual(" << to_string(e) << ")"
                      << "  [degree " << e.deg() * (e.deg() - 1) << "]\n";
            human << "    + dual lines of the point cycle "
                  << to_string(slice.point_cycle) << "\n";
            human << "  slice by the dual line of "
                  << render_point(slice.pencil_point) << ":\n";
        }
        human << "  cycle:  " << to_string(run.cycle) << "\n";
        human << "  degree: " << to_string(cycle_degree(run.cycle)) << "\n";
        for (const auto& w : run.warnings) human << "  warning: " << w << "\n";

        CommandResult res;
        if (job.options.verify) {
            const HSeries f = make_series(job.family, run.order_used);
            const VFamily v = repadded_polynomial(sys.v, run.order_used);
            const VerifyReport rep_v =
                verify(run.cycle, f, v, job.options.trials,
                       job.options.seed ^ 0x0f0f0f0fULL, run.order_used,
                       job.options.order_cap);
            rep["verify"] = verdict_to_json(rep_v);
            human << "  oracle verdict: " << to_string(rep_v.verdict) << "\n";
            if (rep_v.verdict == Verdict::Mismatch) res.exit_code = 3;
            if (rep_v.verdict == Verdict::Inconclusive) res.exit_code = 4;
        }
        res.human = human.str();
        res.json = rep.dump(2) + "\n";
        return res;
    } catch (const std::exception& e) {
        return failure(e);
    }
}

} // namespace

CommandResult cmd_limit(const JobSpec& job) { return limit_like(job, false); }

CommandResult cmd_dual_limit(const JobSpec& job) { return limit_like(job, true); }

CommandResult cmd_equiv_check(const std::string& json_text) {
    try {
        Json j;
        try {
            j = Json::parse(json_text);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("job JSON: ") + e.what(), 0);
        }
        auto read_derivation = [&](const char* key) {
            const Json& arr = j.at(key);
            return make_derivation(parse_poly(arr.at(0).get<std::string>()),
                                   parse_poly(arr.at(1).get<std::string>()),
                                   parse_poly(arr.at(2).get<std::string>()));
        };
        Derivation d1, d2;
        HPoly curve;
        try {
            d1 = read_derivation("d1");
            d2 = read_derivation("d2");
            curve = parse_poly(j.at("curve").get<std::string>());
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("job JSON: ") + e.what(), 0);
        }

        const auto witness = proj_equiv_check(d1, d2, curve);
        Json rep;
        rep["command"] = "equiv-check";
        rep["equivalent"] = witness.has_value();
        if (witness) rep["witness"] = to_string(*witness);

        CommandResult res;
        std::ostringstream human;
        if (witness)
            human << "projectively equivalent modulo " << to_string(curve)
                  << " with a = " << to_string(*witness) << "\n";
        else
            human << "not projectively equivalent modulo " << to_string(curve)
                  << "\n";
        res.human = human.str();
        res.json = rep.dump(2) + "\n";
        return res;
    } catch (const std::exception& e) {
        return failure(e);
    }
}

} // namespace ramlim
