#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "minred/covariant.hpp"
#include "minred/errors.hpp"
#include "minred/json_io.hpp"
#include "minred/pipeline.hpp"
#include "minred/reduce.hpp"
#include "minred/svg.hpp"

using namespace minred;

namespace {

double z_tolerance() {
    if (const char* env = std::getenv("MINRED_TOL_Z")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0.0) return v;
        throw std::invalid_argument("MINRED_TOL_Z must be a positive real");
    }
    return 1e-12;
}

BinaryForm form_from(const std::string& coeffs) {
    return BinaryForm(parse_coeff_list(coeffs));
}

EndoModel model_from(const std::string& num, const std::string& den) {
    return EndoModel(BinaryForm(parse_coeff_list(num)), BinaryForm(parse_coeff_list(den)));
}

void emit_covariant(const BinaryForm& f) {
    CovariantResult cov = covariant_point(f, z_tolerance());
    std::cout << "{\"z\":{\"t\":" << fmt12(cov.z.t) << ",\"u\":" << fmt12(cov.z.u)
              << "},\"theta\":" << fmt12(cov.theta) << ",\"residual\":" << fmt12(cov.residual)
              << "}\n";
}

void emit_form_reduction(const FormReduction& r, bool json) {
    if (json) {
        std::cout << "{\"gamma\":" << json_mat(r.gamma) << ",\"form\":" << json_form(r.reduced)
                  << ",\"value\":" << json_int(r.value)
                  << ",\"nodes_expanded\":" << r.stats.nodes_expanded
                  << ",\"final_bound\":" << fmt12(r.stats.final_bound) << "}\n";
    } else {
        std::cout << "gamma: " << r.gamma.str() << "\n"
                  << "form: " << r.reduced.str() << "\n"
                  << "value: " << r.value.get_str() << "\n"
                  << "nodes_expanded: " << r.stats.nodes_expanded << "\n"
                  << "initial_bound: " << fmt12(r.stats.initial_bound) << "\n"
                  << "final_bound: " << fmt12(r.stats.final_bound) << "\n";
    }
}

void emit_endo_reduction(const EndoReduction& r, bool json) {
    if (json) {
        std::cout << "{\"gamma\":" << json_mat(r.gamma) << ",\"model\":" << json_model(r.reduced)
                  << ",\"height\":" << json_int(r.height) << ",\"value\":" << json_int(r.height)
                  << ",\"nodes_expanded\":" << r.stats.nodes_expanded
                  << ",\"final_bound\":" << fmt12(r.stats.final_bound) << "}\n";
    } else {
        std::cout << "gamma: " << r.gamma.str() << "\n"
                  << "model: " << r.reduced.str() << "\n"
                  << "height: " << r.height.get_str() << "\n"
                  << "nodes_expanded: " << r.stats.nodes_expanded << "\n"
                  << "initial_bound: " << fmt12(r.stats.initial_bound) << "\n"
                  << "final_bound: " << fmt12(r.stats.final_bound) << "\n";
    }
}

int dispatch(int argc, char** argv) {
    CLI::App app{"certified smallest representatives of SL(2,Z)-orbits of binary forms "
                 "and endomorphisms of P^1"};
    app.require_subcommand(1);
    app.fallthrough();
    int threads = 1;
    app.add_option("--threads", threads, "worker threads for the certified bound grid")
        ->check(CLI::PositiveNumber);

    std::string coeffs, num, den, norm_name = "euclidean", svg_path;
    bool json = false, all_orbits = false;
    std::optional<int> period;

    auto* cov = app.add_subcommand("covariant", "covariant point z(F), theta(F), residual");
    cov->add_option("--coeffs", coeffs, "form coefficients a0,...,an")->required();
    cov->add_flag("--json", json, "JSON output (default for this command)");

    auto* reduce = app.add_subcommand("reduce", "smallest orbit representative");
    reduce->require_subcommand(1);
    auto* rform = reduce->add_subcommand("form", "reduce a binary form");
    rform->add_option("--coeffs", coeffs)->required();
    rform->add_option("--norm", norm_name, "euclidean | max")
        ->check(CLI::IsMember({"euclidean", "max"}));
    rform->add_flag("--json", json);
    rform->add_option("--tree-svg", svg_path, "write the Poincare-disk search tree");
    auto* rendo = reduce->add_subcommand("endo", "reduce an endomorphism model");
    rendo->add_option("--num", num)->required();
    rendo->add_option("--den", den)->required();
    int period_val = 0;
    auto* popt = rendo->add_option("--period", period_val, "force the auxiliary period m")
                     ->check(CLI::Range(1, 3));
    rendo->add_flag("--json", json);

    auto* minmodel = app.add_subcommand("minmodel", "p-adically minimal model(s)");
    minmodel->require_subcommand(1);
    auto* mendo = minmodel->add_subcommand("endo", "minimal model of an endomorphism");
    mendo->add_option("--num", num)->required();
    mendo->add_option("--den", den)->required();
    mendo->add_flag("--all-orbits", all_orbits, "all GL(2,Z)-orbit representatives");
    mendo->add_flag("--json", json);

    auto* redmodel = app.add_subcommand("reduced-model", "minimal model of smallest height");
    redmodel->require_subcommand(1);
    auto* xendo = redmodel->add_subcommand("endo", "reduced model of an endomorphism");
    xendo->add_option("--num", num)->required();
    xendo->add_option("--den", den)->required();
    xendo->add_flag("--json", json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    if (popt->count()) period = period_val;

    if (cov->parsed()) {
        emit_covariant(form_from(coeffs));
        return 0;
    }
    if (reduce->parsed() && rform->parsed()) {
        FormNorm norm = norm_name == "max" ? FormNorm::max : FormNorm::euclidean;
        FormReduction r = smallest_representative(form_from(coeffs), norm, threads,
                                                  z_tolerance());
        if (!svg_path.empty()) write_tree_svg(svg_path, r.stats);
        emit_form_reduction(r, json);
        return 0;
    }
    if (reduce->parsed() && rendo->parsed()) {
        EndoReduction r =
            reduced_conjugate(model_from(num, den), period, threads, z_tolerance());
        emit_endo_reduction(r, json);
        return 0;
    }
    if (minmodel->parsed()) {
        EndoModel f = model_from(num, den);
        if (all_orbits) {
            OrbitSet orbits = all_minimal_orbits(f);
            if (json) {
                std::cout << "{\"representatives\":[";
                for (size_t i = 0; i < orbits.representatives.size(); ++i) {
                    const auto& [g, gamma] = orbits.representatives[i];
                    if (i) std::cout << ",";
                    std::cout << "{\"model\":" << json_model(g) << ",\"gamma\":" << json_mat(gamma)
                              << ",\"abs_res\":" << json_int(abs(model_resultant(g))) << "}";
                }
                std::cout << "]}\n";
            } else {
                for (const auto& [g, gamma] : orbits.representatives)
                    std::cout << "model: " << g.str() << "  gamma: " << gamma.str()
                              << "  |Res|: " << Int(abs(model_resultant(g))).get_str() << "\n";
            }
        } else {
            auto [g, gamma] = global_minimal_model(f);
            if (json)
                std::cout << "{\"model\":" << json_model(g) << ",\"gamma\":" << json_mat(gamma)
                          << ",\"abs_res\":" << json_int(abs(model_resultant(g))) << "}\n";
            else
                std::cout << "model: " << g.str() << "\ngamma: " << gamma.str()
                          << "\n|Res|: " << Int(abs(model_resultant(g))).get_str() << "\n";
        }
        return 0;
    }
    if (redmodel->parsed()) {
        ReducedModel r = reduced_model(model_from(num, den), threads, z_tolerance());
        if (json) {
            std::cout << "{\"model\":" << json_model(r.model) << ",\"gamma\":" << json_mat(r.gamma)
                      << ",\"height\":" << json_int(model_height(r.model))
                      << ",\"orbit_heights\":[";
            for (size_t i = 0; i < r.report.orbits.size(); ++i) {
                const auto& row = r.report.orbits[i];
                if (i) std::cout << ",";
                std::cout << "{\"representative\":" << json_model(row.representative)
                          << ",\"model\":" << json_model(row.reduced)
                          << ",\"height\":" << json_int(row.height) << "}";
            }
            std::cout << "]}\n";
        } else {
            std::cout << "model: " << r.model.str() << "\ngamma: " << r.gamma.str()
                      << "\nheight: " << model_height(r.model).get_str() << "\n";
            for (const auto& row : r.report.orbits)
                std::cout << "orbit: " << row.representative.str()
                          << " -> height " << row.height.get_str() << "\n";
        }
        return 0;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const DomainError& e) {
        std::cout << "{\"error\":{\"kind\":\"" << e.kind() << "\",\"message\":\"" << e.what()
                  << "\"}}\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
