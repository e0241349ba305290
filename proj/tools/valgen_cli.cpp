// valgen: command-line frontend for generating sequences, transforms, the
// Artin-Schreier tower ladder and monomial reductions.

#include <cstdlib>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "valgen/valgen.hpp"

using namespace valgen;

namespace {

struct RunConfig {
    std::uint32_t p = 2;
    std::int64_t c = 1;
    std::uint32_t q = 0; // 0: the prime field
    unsigned levels = 3;
    std::string bound = "1";
    std::int64_t precision = 0;
    std::string format = "tsv";
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    std::string family = "Q";
    std::string matrix;
    std::string poly;
    std::size_t samples = 200;
};

unsigned default_jobs() {
    if (const char* env = std::getenv("VALGEN_JOBS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }
std::string opt_str(const std::optional<bool>& b) { return b ? yes_no(*b) : "-"; }

std::optional<Field> config_field(const RunConfig& cfg) {
    if (cfg.q == 0) return std::nullopt;
    Field f = Field::of_size(cfg.q);
    if (f.characteristic() != cfg.p) fail(ErrorKind::BadParams, "q must be a power of p");
    return f;
}

Report base_report(const std::string& title, const RunConfig& cfg, std::vector<std::string> keys) {
    Report r;
    r.title = title;
    const std::map<std::string, std::string> all{
        {"p", std::to_string(cfg.p)},
        {"c", std::to_string(cfg.c)},
        {"q", std::to_string(cfg.q == 0 ? cfg.p : cfg.q)},
        {"levels", std::to_string(cfg.levels)},
        {"bound", cfg.bound},
        {"precision", std::to_string(cfg.precision)},
        {"seed", std::to_string(cfg.seed)},
        {"jobs", std::to_string(cfg.jobs)},
        {"family", cfg.family},
        {"matrix", cfg.matrix},
        {"samples", std::to_string(cfg.samples)},
    };
    for (const auto& k : keys) r.config.emplace_back(k, all.at(k));
    return r;
}

std::string key_letter(Family f) {
    switch (f) {
    case Family::Q: return "Q";
    case Family::P: return "P";
    case Family::U: return "U";
    case Family::Custom: break;
    }
    return "K";
}

std::string term_str(const ExpansionTerm& t, const GenSeq& gs) {
    std::string s = std::to_string(t.coeff);
    for (std::size_t i = 0; i < t.exps.size(); ++i) {
        if (t.exps[i] == 0) continue;
        s += "*" + key_letter(gs.family()) + std::to_string(i);
        if (t.exps[i] != 1) s += "^" + std::to_string(t.exps[i]);
    }
    return s;
}

GenSeq config_seq(const RunConfig& cfg) {
    return build_paper_seq(parse_family(cfg.family), cfg.p, cfg.c, std::max(2u, cfg.levels), config_field(cfg));
}

// ---------------------------------------------------------------------------

int cmd_value(const RunConfig& cfg, std::ostream& out) {
    const GenSeq gs = config_seq(cfg);
    std::map<std::string, int> aliases;
    const VarNames names = chart_names(gs.family());
    aliases[names.x] = 0;
    aliases[names.y] = 1;
    const Poly2 f = parse_poly(cfg.poly, gs.field(), aliases);
    const ValueResult v = value_detail(f, gs);
    Report r = base_report("value", cfg, {"family", "p", "c", "q", "levels"});
    r.columns = {"f", "value", "min_term"};
    r.add_row({f.str(names), v.value.str(), term_str(v.min_term, gs)});
    out << render(r, parse_format(cfg.format));
    return 0;
}

int cmd_semigroup(const RunConfig& cfg, std::ostream& out) {
    const GenSeq gs = config_seq(cfg);
    const Value b = Value::parse(cfg.bound);
    if (b.sign() < 0) fail(ErrorKind::BadParams, "bound must be nonnegative");
    const ValSemigroup s = semigroup(gs, b);
    Report r = base_report("semigroup", cfg, {"family", "p", "c", "levels", "bound"});
    r.columns = {"k", "value"};
    for (std::size_t i = 0; i < s.elements.size(); ++i) r.add_row({std::to_string(i), s.elements[i].str()});
    out << render(r, parse_format(cfg.format));
    return 0;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    const GenSeq gs = config_seq(cfg);
    const ValidityReport v = validate(gs);
    Report r = base_report("validate", cfg, {"family", "p", "c", "q", "levels"});
    r.columns = {"i", "key", "value", "index", "declared", "index_ok", "growth_ok", "monic_ok", "degree_ok"};
    for (const auto& e : v.entries) {
        r.add_row({std::to_string(e.i), gs.keys()[e.i].str(gs.names()), gs.values()[e.i].str(), e.computed_index.str(),
                   e.i == 0 ? "-" : e.declared_index.str(), yes_no(e.index_ok), opt_str(e.growth_ok), yes_no(e.monic_ok),
                   opt_str(e.degree_ok)});
    }
    if (!v.base_value_ok) r.notes.push_back("value of the first key is not positive");
    if (!v.ok && !v.first_failure.empty()) r.notes.push_back("first failure: " + v.first_failure);
    r.ok = v.ok;
    out << render(r, parse_format(cfg.format));
    return v.ok ? 0 : 1;
}

int cmd_transform(const RunConfig& cfg, std::ostream& out) {
    const Family fam = parse_family(cfg.family);
    const GenSeq base = build_paper_seq(fam, cfg.p, cfg.c, cfg.levels + 1, config_field(cfg));
    Report r = base_report("transform", cfg, {"family", "p", "c", "levels"});
    r.columns = {"level", "map", "j", "key", "declared", "pulled_back", "lambda_value", "lambda_residue", "ok"};
    ChartSeq cur = level_one(base);
    bool ok = true;
    for (unsigned k = 1; k < cfg.levels; ++k) {
        const TransformResult t = composite_transform(cur, base);
        for (const auto& c : t.checks) {
            const bool row_ok = c.value_ok && (!c.lambda_value || c.lambda_value->is_zero()) &&
                                (!c.lambda_residue || *c.lambda_residue == 1) && c.strict_ok.value_or(true);
            r.add_row({std::to_string(k) + "->" + std::to_string(k + 1), t.map.str(), std::to_string(c.j),
                       monomial_str(c.key, key_letter(fam)), c.declared.str(), c.pulled_back.str(),
                       c.lambda_value ? c.lambda_value->str() : "-",
                       c.lambda_residue ? std::to_string(*c.lambda_residue) : "-", yes_no(row_ok)});
        }
        if (!t.validity.ok) r.notes.push_back("level " + std::to_string(k + 1) + ": " + t.validity.first_failure);
        ok = ok && t.ok;
        cur = t.next;
    }
    r.ok = ok;
    out << render(r, parse_format(cfg.format));
    return ok ? 0 : 1;
}

std::vector<Report> tower_reports(const RunConfig& cfg) {
    if (cfg.levels < 1) fail(ErrorKind::BadParams, "levels must be at least 1");
    const Tower t = build_tower(cfg.p, cfg.c, cfg.levels + 1);

    Report ladder = base_report("tower ladder", cfg, {"p", "c", "levels"});
    ladder.columns = {"j", "extension", "a", "a_bar", "alpha", "b", "d", "beta", "delta", "expected", "ok"};
    bool ladder_ok = true;
    for (const LadderRow& row : run_tower_ladder(t, cfg.levels)) {
        for (const LadderExtension* e : {&row.upper, &row.lower, &row.total}) {
            const StableForm& s = e->form;
            ladder.add_row({std::to_string(row.j), e->name, std::to_string(s.a), std::to_string(s.a_bar),
                            std::to_string(s.alpha), std::to_string(s.b), std::to_string(s.d),
                            s.d_is_p_power() ? std::to_string(s.beta) : "-", std::to_string(e->delta),
                            "(" + std::to_string(e->expected_alpha) + "," + std::to_string(e->expected_beta) + ")",
                            yes_no(e->ok)});
        }
        if (!row.sums_ok) ladder.notes.push_back("j=" + std::to_string(row.j) + ": alpha + beta sums differ");
        if (!row.multiplicative_ok)
            ladder.notes.push_back("j=" + std::to_string(row.j) + ": defects are not 1 + 1 = 2");
        ladder_ok = ladder_ok && row.ok;
    }
    ladder.ok = ladder_ok;

    Report checks = base_report("tower identities", cfg, {"p", "c", "levels", "precision", "seed", "samples"});
    checks.columns = {"check", "j", "detail", "ok"};
    bool checks_ok = true;
    auto add = [&](const std::string& name, const std::string& j, const std::string& detail, bool ok) {
        checks.add_row({name, j, detail, yes_no(ok)});
        checks_ok = checks_ok && ok;
    };
    const TowerCheck v = validate_tower(t);
    add("sequences", "-", v.ok ? "Q, U, P valid; U stage groups" : v.failures.front(), v.ok);
    for (unsigned j = 1; j <= cfg.levels; ++j) {
        const Lemma64Report l = verify_lemma64(t, j, cfg.precision);
        add("lemma", std::to_string(j),
            "E=" + std::to_string(l.exponent) + " M=" + std::to_string(l.precision) +
                " deg_y f=" + std::to_string(l.deg_y_f) + " complete=" + yes_no(l.complete),
            l.ok);
        const ValueComparison c = verify_value_comparison(t, j);
        add("value comparison", std::to_string(j),
            "nu=" + c.nu_u.str() + " expected=" + c.expected.str() + " bound=" + c.lemma_bound.str(), c.ok);
        const ParamRelations pr = verify_param_relations(t, j);
        add("parameters", std::to_string(j),
            "x_A=" + pr.x_a.str() + " v_A=" + pr.v_a.str() + " u_R=" + pr.u_r.str() + " v_R=" + pr.v_r.str(), pr.ok);
    }
    const RestrictionReport rr = verify_restriction(t, cfg.samples, Value(1000), cfg.seed);
    add("restriction", "-", std::to_string(rr.tested) + " samples, " + std::to_string(rr.mismatches) + " mismatches",
        rr.ok());
    for (const auto& f : rr.failures)
        checks.notes.push_back("mismatch: g=" + f.g.str(chart_names(Family::U)) + " nu1=" + f.nu1.str() +
                               " nu*=" + f.nu_star.str());
    checks.ok = checks_ok;
    return {ladder, checks};
}

int cmd_tower(const RunConfig& cfg, std::ostream& out) {
    const auto reports = tower_reports(cfg);
    out << render_all(reports, parse_format(cfg.format));
    for (const auto& r : reports)
        if (!r.ok) return 1;
    return 0;
}

int cmd_monomialize(const RunConfig& cfg, std::ostream& out) {
    std::vector<std::int64_t> entries;
    std::stringstream ss(cfg.matrix);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            entries.push_back(std::stoll(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            fail(ErrorKind::Parse, "bad matrix entry '" + item + "' at position " + std::to_string(entries.size() + 1));
        }
    }
    if (entries.size() != 4) fail(ErrorKind::Parse, "--matrix expects four comma-separated integers a,b,c,d");
    const Mat2 m{{{entries[0], entries[1]}, {entries[2], entries[3]}}};
    const std::int64_t e = det_index(m);
    const auto [d1, d2] = smith_normal_form(m);
    Report r = base_report("monomialize", cfg, {"matrix"});
    r.columns = {"field", "value"};
    r.add_row({"e", std::to_string(e)});
    r.add_row({"snf", "(" + std::to_string(d1) + "," + std::to_string(d2) + ")"});
    const bool snf_ok = d1 * d2 == e;
    r.add_row({"snf_index_ok", yes_no(snf_ok)});
    bool ok = snf_ok;
    if (m[0][0] > 0 && m[1][0] > 0) {
        const EuclidResult er = euclidean_reduce(m);
        r.add_row({"word", er.step_log});
        r.add_row({"s", std::to_string(er.s)});
        r.add_row({"t1", std::to_string(er.t1)});
        r.add_row({"t2", std::to_string(er.t2)});
        r.add_row({"s*|t1-t2|=e", yes_no(er.identity_ok)});
        r.add_row({"u1", "x^" + std::to_string(er.final_rows[0][0]) + "*y^" + std::to_string(er.final_rows[0][1])});
        r.add_row({"v1", "x^" + std::to_string(er.final_rows[1][0]) + "*y^" + std::to_string(er.final_rows[1][1])});
        ok = ok && er.identity_ok;
    } else {
        r.notes.push_back("reduction needs positive x-exponents in both rows; skipped");
    }
    const GradedPresentation g = graded_presentation_rank2(m, 1);
    nlohmann::ordered_json pj;
    pj["rank"] = g.rank;
    nlohmann::ordered_json rels = nlohmann::ordered_json::array();
    for (const auto& rel : g.relations) rels.push_back({{"exponents", rel.exponents}, {"unit", rel.unit_class}});
    pj["relations"] = rels;
    pj["degree"] = g.degree;
    r.add_row({"presentation", pj.dump()});
    r.ok = ok;
    out << render(r, parse_format(cfg.format));
    return ok ? 0 : 1;
}

/// Validity of the three families and the tower ladder for the standard
/// configurations; configurations run in parallel, output is in fixed order.
int cmd_report(const RunConfig& cfg, std::ostream& out) {
    struct Job {
        std::uint32_t p;
        std::int64_t c;
    };
    const std::vector<Job> jobs{{2, 1}, {2, 2}, {3, 2}};
    auto run = [&cfg](Job j) {
        RunConfig local = cfg;
        local.p = j.p;
        local.c = j.c;
        std::vector<Report> out;
        Report seqs = base_report("sequences", local, {"p", "c", "levels"});
        seqs.columns = {"family", "length", "values", "ok"};
        for (Family f : {Family::Q, Family::P, Family::U}) {
            const GenSeq gs = build_paper_seq(f, j.p, j.c, local.levels + 1, std::nullopt);
            std::string vals;
            for (const auto& v : gs.values()) vals += (vals.empty() ? "" : " ") + v.str();
            const bool ok = validate(gs).ok;
            seqs.add_row({to_string(f), std::to_string(gs.size()), vals, yes_no(ok)});
            seqs.ok = seqs.ok && ok;
        }
        out.push_back(seqs);
        for (auto& r : tower_reports(local)) out.push_back(std::move(r));
        return out;
    };
    std::vector<std::vector<Report>> results(jobs.size());
    const std::size_t width = std::max(1u, cfg.jobs);
    for (std::size_t start = 0; start < jobs.size(); start += width) {
        std::vector<std::future<std::vector<Report>>> batch;
        for (std::size_t i = start; i < std::min(jobs.size(), start + width); ++i)
            batch.push_back(std::async(std::launch::async, run, jobs[i]));
        for (std::size_t i = 0; i < batch.size(); ++i) results[start + i] = batch[i].get();
    }
    std::vector<Report> all;
    bool ok = true;
    for (auto& rs : results)
        for (auto& r : rs) {
            ok = ok && r.ok;
            all.push_back(std::move(r));
        }
    out << render_all(all, parse_format(cfg.format));
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generating sequences, transforms and defect ladders of valuations"};
    app.require_subcommand(1);
    RunConfig cfg;
    cfg.jobs = default_jobs();

    auto common = [&cfg](CLI::App* sub) {
        sub->add_option("--p", cfg.p, "prime characteristic")->check(CLI::PositiveNumber);
        sub->add_option("--c", cfg.c, "tower parameter c, (p-1) | c");
        sub->add_option("--q", cfg.q, "field size (power of p); default p");
        sub->add_option("--levels", cfg.levels, "number of levels / sequence length");
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"tsv", "json", "md"}));
        sub->add_option("--seed", cfg.seed, "seed for randomized sweeps");
        sub->add_option("--jobs", cfg.jobs, "parallel jobs (default $VALGEN_JOBS or 1)")->check(CLI::PositiveNumber);
    };

    auto* value = app.add_subcommand("value", "value of a polynomial under a built-in sequence");
    common(value);
    value->add_option("--family", cfg.family, "Q, P or U")->check(CLI::IsMember({"Q", "P", "U"}));
    value->add_option("poly", cfg.poly, "polynomial in the chart variables")->required();

    auto* semi = app.add_subcommand("semigroup", "value semigroup up to a bound");
    common(semi);
    semi->add_option("--family", cfg.family, "Q, P or U")->check(CLI::IsMember({"Q", "P", "U"}));
    semi->add_option("--bound", cfg.bound, "bound B (exact fraction)");

    auto* val = app.add_subcommand("validate", "validity of a built-in sequence");
    common(val);
    val->add_option("--family", cfg.family, "Q, P or U")->check(CLI::IsMember({"Q", "P", "U"}));

    auto* tr = app.add_subcommand("transform", "composite transforms along a built-in sequence");
    common(tr);
    tr->add_option("--family", cfg.family, "Q, P or U")->check(CLI::IsMember({"Q", "P", "U"}));

    auto* tower = app.add_subcommand("tower", "defect ladder of the Artin-Schreier tower");
    common(tower);
    tower->add_option("--precision", cfg.precision, "x-adic precision M (0: automatic)");
    tower->add_option("--samples", cfg.samples, "restriction samples");

    auto* mono = app.add_subcommand("monomialize", "lattice index and Euclidean reduction of an exponent matrix");
    common(mono);
    mono->add_option("--matrix", cfg.matrix, "a,b,c,d")->required();

    auto* rep = app.add_subcommand("report", "full sweep over the standard configurations");
    common(rep);
    rep->add_option("--precision", cfg.precision, "x-adic precision M (0: automatic)");
    rep->add_option("--samples", cfg.samples, "restriction samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cfg.p < 2 || !is_prime(cfg.p)) fail(ErrorKind::BadParams, "p must be prime");
        if (*value) return cmd_value(cfg, std::cout);
        if (*semi) return cmd_semigroup(cfg, std::cout);
        if (*val) return cmd_validate(cfg, std::cout);
        if (*tr) return cmd_transform(cfg, std::cout);
        if (*tower) return cmd_tower(cfg, std::cout);
        if (*mono) return cmd_monomialize(cfg, std::cout);
        if (*rep) return cmd_report(cfg, std::cout);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
