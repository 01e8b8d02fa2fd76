#include "mirrorcount/report.hpp"

namespace mirrorcount {

namespace {

using nlohmann::json;

std::string rational_str(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    return c.get_str();
}

json config_json(const ExperimentConfig& cfg, bool with_member = true) {
    json j;
    j["p"] = cfg.p;
    j["a"] = cfg.a;
    j["engine"] = kEngineVersion;
    j["budget_cells"] = std::to_string(cfg.cell_budget);
    if (with_member) {
        j["n"] = cfg.n;
        j["lambda"] = cfg.lambda.str();
        j["k_max"] = cfg.k_max;
        j["group"] = group_spec_name(cfg.group);
        j["strategy"] = strategy_name(cfg.strategy);
    }
    return j;
}

json sequence_json(const CountSequence& seq) {
    json arr = json::array();
    for (const auto& v : seq.values) arr.push_back(v.get_str());
    return arr;
}

json poly_json(const IntPoly& f) {
    json arr = json::array();
    for (const auto& c : f) arr.push_back(c.get_str());
    return arr;
}

json slopes_json(const std::vector<std::pair<Rational, int>>& slopes) {
    json arr = json::array();
    for (const auto& [s, m] : slopes) arr.push_back(json::array({rational_str(s), m}));
    return arr;
}

json congruence_json(const CongruenceReport& rep) {
    json v;
    v["c"] = rep.c.str();
    v["mode"] = rep.mode == CongruenceMode::quotient ? "quotient" : "unit";
    v["all_pass"] = rep.all_pass;
    json per_k = json::array();
    for (const auto& row : rep.rows) {
        json r;
        r["k"] = row.k;
        r["pass"] = row.pass;
        r["pass_weak"] = row.pass_weak;
        if (row.pass_unit) {
            r["pass_unit"] = *row.pass_unit;
            r["ord_x_minus_one"] = row.ord_x_minus_one->str();
            r["ord_quotient_minus_one"] = row.ord_quotient_minus_one->str();
        }
        per_k.push_back(std::move(r));
    }
    v["per_k"] = std::move(per_k);
    return v;
}

json zeta_fit_json(const ZetaRatio& fit) {
    json f;
    f["ok"] = fit.ok;
    if (fit.ok) {
        f["numerator"] = poly_json(fit.numerator);
        f["denominator"] = poly_json(fit.denominator);
        f["numerator_squarefree"] = fit.numerator_squarefree;
        f["denominator_squarefree"] = fit.denominator_squarefree;
    } else {
        f["note"] = fit.note;
    }
    f["order"] = fit.order;
    f["saturated"] = fit.saturated;
    return f;
}

// multi-coordinate lambda values use ';' so CSV columns stay aligned
std::string csv_field(const std::string& s) {
    std::string out = s;
    for (auto& c : out)
        if (c == ',') c = ';';
    return out;
}

}  // namespace

std::string report_emit(const json& j) { return j.dump(2) + "\n"; }

json to_json(const CongruenceExperimentResult& r) {
    json j;
    json assumptions = json::array();
    if (r.smooth) assumptions.push_back("smooth");
    else assumptions.push_back("singular-allowed");
    assumptions.push_back("lifting-hypothesis-assumed");
    j["assumptions"] = std::move(assumptions);
    j["config"] = config_json(r.config);
    j["group_order"] = r.group_order.get_str();
    j["counts"] = {{"variety", sequence_json(r.counts_x)},
                   {"quotient", sequence_json(r.counts_quotient)}};
    json diffs = json::array();
    json ords = json::array();
    for (const auto& row : r.congruence.rows) {
        diffs.push_back(row.difference.get_str());
        ords.push_back(row.ord_difference.str());
    }
    j["differences"] = std::move(diffs);
    j["ord_q"] = std::move(ords);
    json verdicts = congruence_json(r.congruence);
    verdicts["quotient_congruence"] = r.congruence.all_pass;
    j["verdicts"] = std::move(verdicts);
    if (r.difference_fit) {
        json z;
        z["fit"] = zeta_fit_json(*r.difference_fit);
        if (r.divisibility) {
            z["root_divisibility"] = r.divisibility->pass;
            if (!r.divisibility->pass) z["detail"] = r.divisibility->detail;
        }
        j["zeta"] = std::move(z);
    }
    return j;
}

json to_json(const UnitExperimentResult& r) {
    json j;
    json cfg = config_json(r.config, false);
    cfg["n"] = r.family == UnitFamily::quadric_surface ? 3 : r.config.n;
    cfg["k_max"] = r.config.k_max;
    cfg["family"] = unit_family_name(r.family);
    cfg["group"] = r.group_name;
    j["config"] = std::move(cfg);
    j["group_order"] = r.group_order.get_str();
    j["counts"] = {{"variety", sequence_json(r.counts_x)},
                   {"quotient", sequence_json(r.counts_quotient)}};
    json verdicts = congruence_json(r.congruence);
    verdicts["unit_congruence"] = r.congruence.all_pass;
    j["verdicts"] = std::move(verdicts);
    return j;
}

json to_json(const CountExperimentResult& r) {
    json j;
    j["config"] = config_json(r.config);
    j["baseline"] = r.baseline;
    json counts = json::array();
    for (const auto& rec : r.records) {
        json e;
        e["k"] = rec.k;
        e["value"] = rec.value.get_str();
        e["provenance"] = provenance_name(rec.provenance);
        counts.push_back(std::move(e));
    }
    j["counts"] = std::move(counts);
    return j;
}

json to_json(const TwistedCountResult& r) {
    json j;
    j["config"] = config_json(r.config);
    json el;
    json scal = json::array();
    for (const auto& s : r.element.scalings) scal.push_back(s.str());
    el["scalings"] = std::move(scal);
    el["perm"] = r.element.perm;
    j["element"] = std::move(el);
    json counts = json::array();
    for (const auto& rec : r.records) {
        json e;
        e["k"] = rec.k;
        e["value"] = rec.value.get_str();
        e["provenance"] = provenance_name(rec.provenance);
        counts.push_back(std::move(e));
    }
    j["twisted_counts"] = std::move(counts);
    return j;
}

json to_json(const QuotientCountResult& r) {
    json j;
    j["config"] = config_json(r.config);
    j["group_order"] = r.group_order.get_str();
    json b = json::array();
    for (const auto& rec : r.burnside) b.push_back(rec.value.get_str());
    j["burnside"] = std::move(b);
    if (!r.oracle.empty()) {
        json o = json::array();
        for (const auto& rec : r.oracle) o.push_back(rec.value.get_str());
        j["orbit_oracle"] = std::move(o);
        j["oracle_agrees"] = r.oracle_agrees;
    }
    return j;
}

json to_json(const ZetaExperimentResult& r) {
    json j;
    j["config"] = config_json(r.config);
    j["difference"] = r.difference;
    j["counts"] = sequence_json(r.seq);
    j["fit"] = zeta_fit_json(r.fit);
    if (r.sanity) {
        json s;
        s["pass"] = r.sanity->pass;
        s["degree_ok"] = r.sanity->degree_ok;
        s["functional_equation"] = r.sanity->functional_equation;
        s["trace_bound"] = r.sanity->trace_bound;
        j["curve_sanity"] = std::move(s);
    }
    if (r.divisibility) {
        j["root_divisibility"] = r.divisibility->pass;
        if (!r.divisibility->pass) j["divisibility_detail"] = r.divisibility->detail;
    }
    if (!r.numerator_slopes.empty()) j["numerator_slopes"] = slopes_json(r.numerator_slopes);
    return j;
}

json to_json(const SmoothnessResult& r) {
    json j;
    j["config"] = config_json(r.config);
    j["search_degree"] = r.search_degree;
    j["all_agree"] = r.all_agree;
    json rows = json::array();
    for (const auto& row : r.rows) {
        json e;
        e["lambda"] = row.lambda.str();
        e["smooth"] = row.closed_form_smooth;
        e["oracle_found_singularity"] = row.oracle_found_singularity;
        e["agree"] = row.agree;
        rows.push_back(std::move(e));
    }
    j["rows"] = std::move(rows);
    json sing = json::array();
    for (const auto& l : r.singular_set) sing.push_back(l.str());
    j["singular_set"] = std::move(sing);
    return j;
}

json to_json(const NewtonHodgeResult& r) {
    json j;
    j["engine"] = kEngineVersion;
    j["k_max"] = r.k_max;
    j["primes"] = r.primes;
    j["all_pass"] = r.all_pass;
    j["found_supersingular"] = r.found_supersingular;
    json rows = json::array();
    for (const auto& row : r.rows) {
        json e;
        e["p"] = row.p;
        e["lambda"] = row.lambda.str();
        e["fit_ok"] = row.fit_ok;
        if (row.fit_ok) {
            e["numerator"] = poly_json(row.numerator);
            e["slopes"] = slopes_json(row.slopes);
            e["above_hodge"] = row.above_hodge;
            e["supersingular"] = row.supersingular;
        }
        rows.push_back(std::move(e));
    }
    j["rows"] = std::move(rows);
    return j;
}

json to_json(const HodgeData& h) {
    json j;
    j["engine"] = kEngineVersion;
    j["n"] = h.n;
    j["d"] = h.d;
    j["weight"] = h.weight;
    json prim = json::array();
    for (const auto& v : h.primitive) prim.push_back(v.get_str());
    j["primitive"] = std::move(prim);
    json slopes = json::array();
    for (const auto& [s, m] : hodge_polygon(h).slopes)
        slopes.push_back(json::array({rational_str(s), m}));
    j["hodge_polygon"] = std::move(slopes);
    return j;
}

std::string to_csv(const CongruenceExperimentResult& r) {
    std::string out = "k,N_X,N_quotient,difference,ord_q,pass,pass_weak\n";
    for (const auto& row : r.congruence.rows) {
        out += std::to_string(row.k) + "," + row.count_x.get_str() + "," +
               row.count_quotient.get_str() + "," + row.difference.get_str() + "," +
               row.ord_difference.str() + "," + (row.pass ? "true" : "false") + "," +
               (row.pass_weak ? "true" : "false") + "\n";
    }
    return out;
}

std::string to_csv(const UnitExperimentResult& r) {
    std::string out = "k,N_X,N_quotient,ord_X_minus_1,ord_quotient_minus_1,pass\n";
    for (const auto& row : r.congruence.rows) {
        out += std::to_string(row.k) + "," + row.count_x.get_str() + "," +
               row.count_quotient.get_str() + "," +
               (row.ord_x_minus_one ? row.ord_x_minus_one->str() : "") + "," +
               (row.ord_quotient_minus_one ? row.ord_quotient_minus_one->str() : "") + "," +
               ((row.pass_unit && *row.pass_unit) ? "true" : "false") + "\n";
    }
    return out;
}

std::string to_csv(const CountExperimentResult& r) {
    std::string out = "k,N_k,provenance\n";
    for (const auto& rec : r.records)
        out += std::to_string(rec.k) + "," + rec.value.get_str() + "," +
               provenance_name(rec.provenance) + "\n";
    return out;
}

std::string to_csv(const TwistedCountResult& r) {
    std::string out = "k,lambda_gFk,provenance\n";
    for (const auto& rec : r.records)
        out += std::to_string(rec.k) + "," + rec.value.get_str() + "," +
               provenance_name(rec.provenance) + "\n";
    return out;
}

std::string to_csv(const QuotientCountResult& r) {
    std::string out = "k,burnside,orbit_oracle\n";
    for (size_t i = 0; i < r.burnside.size(); ++i) {
        out += std::to_string(r.burnside[i].k) + "," + r.burnside[i].value.get_str() + ",";
        if (i < r.oracle.size()) out += r.oracle[i].value.get_str();
        out += "\n";
    }
    return out;
}

std::string to_csv(const ZetaExperimentResult& r) {
    std::string out = "k,count\n";
    for (int k = 1; k <= r.seq.length(); ++k)
        out += std::to_string(k) + "," + r.seq.at_k(k).get_str() + "\n";
    return out;
}

std::string to_csv(const SmoothnessResult& r) {
    std::string out = "lambda,smooth,oracle_found_singularity,agree\n";
    for (const auto& row : r.rows)
        out += csv_field(row.lambda.str()) + "," + (row.closed_form_smooth ? "true" : "false") +
               "," + (row.oracle_found_singularity ? "true" : "false") + "," +
               (row.agree ? "true" : "false") + "\n";
    return out;
}

std::string to_csv(const NewtonHodgeResult& r) {
    std::string out = "p,lambda,fit_ok,above_hodge,supersingular\n";
    for (const auto& row : r.rows)
        out += std::to_string(row.p) + "," + csv_field(row.lambda.str()) + "," +
               (row.fit_ok ? "true" : "false") + "," + (row.above_hodge ? "true" : "false") + "," +
               (row.supersingular ? "true" : "false") + "\n";
    return out;
}

std::string to_csv(const HodgeData& h) {
    std::string out = "p,q,h_prim\n";
    for (int i = 0; i <= h.weight; ++i)
        out += std::to_string(i) + "," + std::to_string(h.weight - i) + "," +
               h.primitive[static_cast<size_t>(i)].get_str() + "\n";
    return out;
}

}  // namespace mirrorcount
