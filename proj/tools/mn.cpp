#include "mn/engine.hpp"
#include "mn/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::vector<long> parse_primes(const std::string& text) {
    std::vector<long> primes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        primes.push_back(std::stol(item));
    }
    if (primes.empty()) throw mn::parse_error("--primes needs a comma-separated list");
    return primes;
}

std::vector<mn::KnotRecord> open_db(const std::string& db_path) {
    if (db_path.empty()) return mn::parse_db(mn::bundled_seed_db(), "<bundled>");
    return mn::load_db(db_path);
}

const mn::KnotRecord& find_record(const std::vector<mn::KnotRecord>& db, const std::string& name) {
    for (const auto& r : db)
        if (r.name == name) return r;
    throw mn::data_error("unknown knot '" + name + "' (not in the database)");
}

std::string profile_line(const mn::NovikovProfile& p) {
    std::ostringstream out;
    out << "(";
    for (std::size_t k = 0; k < p.entries.size(); ++k)
        out << (k ? "," : "") << p.entries[k].torsion;
    out << ")";
    return out.str();
}

int run_compute(const std::string& name, const std::string& db_path, bool json_out,
                const std::vector<long>& primes, std::size_t max_minors) {
    auto db = open_db(db_path);
    const mn::KnotRecord& record = find_record(db, name);
    mn::KnotInvariants inv = mn::classical_invariants(record, max_minors);

    mn::PDCode pd = record.pd ? *record.pd : mn::braid_to_pd(*record.braid);
    mn::ModulePresentation alex = mn::alexander_presentation(mn::wirtinger_from_pd(pd));
    int fp_bound = mn::fp_lower_bound(alex, primes);

    if (json_out) {
        nlohmann::json j;
        j["name"] = record.name;
        j["alexander"] = inv.delta.str();
        j["alexander_at_1"] = static_cast<long>(inv.delta.eval_at_one().get_si());
        j["monic"] = inv.monic;
        j["symmetric"] = mn::validate_knot_polynomial(inv.delta);
        nlohmann::json q = nlohmann::json::array();
        for (const auto& e : inv.profile.entries) q.push_back(e.torsion);
        j["q_hat"] = q;
        j["novikov_lower_bound"] = mn::novikov_lower_bound(inv.profile);
        j["fp_lower_bound"] = fp_bound;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "knot: " << record.name << "\n";
        std::cout << "Delta = " << inv.delta.str() << "\n";
        std::cout << "Delta(1) = " << inv.delta.eval_at_one().get_str() << "\n";
        std::cout << "monic: " << (inv.monic ? "yes" : "no") << "\n";
        std::cout << "q^ (degrees 0..3) = " << profile_line(inv.profile) << "\n";
        std::cout << "novikov_lower_bound = " << mn::novikov_lower_bound(inv.profile) << "\n";
        std::cout << "fp_lower_bound = " << fp_bound << "\n";
    }
    return 0;
}

int run_bounds(const std::string& expr_text, const std::string& db_path, bool json_out,
               std::size_t max_minors) {
    auto db = open_db(db_path);
    auto expr = mn::parse_expr(expr_text);
    mn::DeriveOptions options;
    options.max_minors = max_minors;
    mn::BoundReport report = mn::derive(*expr, db, options);
    if (json_out)
        std::cout << mn::report_to_json(report).dump(2) << "\n";
    else
        std::cout << mn::explain(report);
    return 0;
}

int run_validate(const std::string& path) {
    auto db = mn::load_db(path);
    for (const auto& record : db) {
        if (record.dimension != 1) {
            std::cout << "ok " << record.name << " (dimension " << record.dimension
                      << ", facts only)\n";
            continue;
        }
        mn::KnotInvariants inv = mn::classical_invariants(record);
        if (record.pd && record.braid) {
            mn::KnotRecord braid_only = record;
            braid_only.pd.reset();
            mn::KnotInvariants from_braid = mn::classical_invariants(braid_only);
            if (!(from_braid.delta == inv.delta))
                throw mn::data_error("record '" + record.name +
                                     "': pd and braid notations disagree: " + inv.delta.str() +
                                     " vs " + from_braid.delta.str());
        }
        std::cout << "ok " << record.name << " Delta = " << inv.delta.str() << "\n";
    }
    std::cout << db.size() << " records validated\n";
    return 0;
}

int run_export(const std::string& expr_text, const std::string& out_path,
               const std::string& db_path, std::size_t max_minors) {
    auto db = open_db(db_path);
    auto expr = mn::parse_expr(expr_text);
    mn::DeriveOptions options;
    options.max_minors = max_minors;
    mn::BoundReport report = mn::derive(*expr, db, options);
    mn::save_report(report, out_path);
    std::cout << "report written to " << out_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Novikov-homology invariants and Morse-Novikov bounds for knots"};
    app.require_subcommand(1);

    std::string db_path;
    bool json_out = false;
    std::string primes_text = "2,3,5,7";
    std::size_t max_minors = mn::kDefaultMinorCap;
    app.add_option("--db", db_path, "knot database file (default: bundled seed table)");
    app.add_flag("--json", json_out, "structured output");
    app.add_option("--primes", primes_text, "primes for the F_p cross-check");
    app.add_option("--max-minors", max_minors, "cap on enumerated minors per level");

    std::string name, expr_text, db_arg, out_path;
    CLI::App* compute = app.add_subcommand("compute", "invariants of a knot in the database");
    compute->add_option("name", name, "knot name")->required();
    CLI::App* bounds = app.add_subcommand("bounds", "derive Morse-Novikov bounds for an expression");
    bounds->add_option("expr", expr_text, "knot expression, e.g. \"spin(5_2)\"")->required();
    CLI::App* validate = app.add_subcommand("validate", "check a database file");
    validate->add_option("path", db_arg, "database file")->required();
    CLI::App* exp = app.add_subcommand("export", "derive bounds and write a JSON report");
    exp->add_option("expr", expr_text, "knot expression")->required();
    exp->add_option("path", out_path, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::vector<long> primes = parse_primes(primes_text);
        if (compute->parsed()) return run_compute(name, db_path, json_out, primes, max_minors);
        if (bounds->parsed()) return run_bounds(expr_text, db_path, json_out, max_minors);
        if (validate->parsed()) return run_validate(db_arg);
        if (exp->parsed()) return run_export(expr_text, out_path, db_path, max_minors);
    } catch (const mn::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mn::inconsistency_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const mn::resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const mn::data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
