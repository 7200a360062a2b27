#include "entrocone/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "entrocone/cone.hpp"
#include "entrocone/groups.hpp"
#include "entrocone/ineq.hpp"
#include "entrocone/quantum.hpp"
#include "entrocone/stab.hpp"
#include "entrocone/verify.hpp"

namespace entrocone::cli {

namespace {

std::string slurp_first_word(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::stringstream ss(line);
        std::string word;
        if (ss >> word) return word;
    }
    return "";
}

EntropyVector entropy_from_file(const std::string& path, ExecPolicy exec) {
    const std::string head = slurp_first_word(path);
    std::ifstream in(path);
    if (head == "prime:") {
        auto g = stab::read_stab(in);
        return stab::entropy_vector(g, exec);
    }
    if (head == "dims:") {
        auto state = quantum::read_state(in);
        if (std::holds_alternative<quantum::PureState>(state)) {
            const auto& psi = std::get<quantum::PureState>(state);
            return quantum::entropy_vector(psi, PartySystem::alphabetic(psi.fact.factors()),
                                           exec);
        }
        const auto& rho = std::get<quantum::DensityMatrix>(state);
        return quantum::entropy_vector(rho, PartySystem::alphabetic(rho.factorization().factors()),
                                       exec);
    }
    throw std::invalid_argument("unrecognized input file (expected 'prime:' or 'dims:' header)");
}

std::vector<ineq::InequalityInstance> build_families(const PartySystem& sys,
                                                     const std::vector<std::string>& families) {
    std::vector<ineq::InequalityInstance> out;
    auto all_four_subsets = [&](auto&& fn) {
        const int n = sys.size();
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c)
                    for (int d = c + 1; d < n; ++d) fn(std::vector<int>{a, b, c, d});
    };
    for (const auto& f : families) {
        if (f == "shannon") {
            for (auto& inst : ineq::shannon_family(sys)) out.push_back(std::move(inst));
        } else if (f == "quantum") {
            for (auto& inst : ineq::quantum_family(sys)) out.push_back(std::move(inst));
        } else if (f == "ingleton") {
            all_four_subsets([&](const std::vector<int>& four) {
                for (auto& inst : ineq::ingleton_permutations(sys, four))
                    out.push_back(std::move(inst));
            });
        } else if (f == "kinser") {
            all_four_subsets([&](const std::vector<int>& four) {
                out.push_back(ineq::kinser(sys, four));
            });
            if (sys.size() > 4) {
                std::vector<int> everyone(sys.size());
                for (int i = 0; i < sys.size(); ++i) everyone[i] = i;
                out.push_back(ineq::kinser(sys, everyone));
            }
        } else if (f == "matus") {
            all_four_subsets([&](const std::vector<int>& four) {
                std::vector<int> perm = four;
                do {
                    for (long t = 0; t <= 3; ++t)
                        out.push_back(ineq::matus(sys, t, perm[0], perm[1], perm[2], perm[3]));
                } while (std::next_permutation(perm.begin(), perm.end()));
            });
        } else if (f == "all") {
            return build_families(sys, {"quantum", "ingleton", "kinser", "matus"});
        } else {
            throw std::invalid_argument("unknown family '" + f + "'");
        }
    }
    if (out.empty()) throw std::invalid_argument("no inequality family selected");
    return out;
}

void print_rays_table(std::ostream& out, const std::vector<cone::Ray>& rays,
                      const cone::MatchReport& rep) {
    // Table 1 layout: the seven orbit representatives as columns 1..6, 0
    out << "extreme rays of the 4-party quantum Ingleton cone: " << rays.size()
        << " rays in " << rep.orbit_sizes.size() << " orbits\n";
    const int order[7] = {1, 2, 3, 4, 5, 6, 0};
    out << "subset\\ray      ";
    for (int c : order) out << "  " << c;
    out << '\n';
    for (std::size_t row = 0; row < 15; ++row) {
        std::string label = cone::table_row_label(row);
        label.resize(16, ' ');
        out << label;
        for (int c : order) out << "  " << cone::kTable1Columns[c][row];
        out << '\n';
    }
    out << "orbit sizes:";
    for (const auto& [col, size] : rep.orbit_sizes) out << "  ray" << col << ":" << size;
    out << '\n';
}

void print_rays_csv(std::ostream& out, const std::vector<cone::Ray>& rays,
                    const PartySystem& sys) {
    out << "ray";
    for (mask_t j = 1; j <= sys.full_mask(); ++j) out << ',' << sys.subset_label(j);
    out << '\n';
    for (std::size_t i = 0; i < rays.size(); ++i) {
        out << i;
        for (const auto& x : rays[i]) out << ',' << x.get_str();
        out << '\n';
    }
}

void print_rays_jsonl(std::ostream& out, const std::vector<cone::Ray>& rays) {
    for (const auto& r : rays) {
        out << "{\"ray\":[";
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i].get_str();
        out << "]}\n";
    }
}

int run_unlocked(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"entropy vectors, entropy inequalities, and the 4-party quantum Ingleton cone"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "seed for the randomized suites");

    // entropy
    auto* entropy_cmd =
        app.add_subcommand("entropy", "entropy vector of a stabiliser or state file, as CSV");
    std::string entropy_file;
    bool serial = false;
    entropy_cmd->add_option("file", entropy_file)->required();
    entropy_cmd->add_flag("--serial", serial, "use the serial reference kernels");

    // check
    auto* check_cmd =
        app.add_subcommand("check", "evaluate inequality families on an entropy vector CSV");
    std::string check_file;
    std::vector<std::string> families;
    std::string check_format = "csv";
    check_cmd->add_option("file", check_file)->required();
    check_cmd->add_option("--family", families, "shannon|quantum|ingleton|kinser|matus|all")
        ->required();
    check_cmd->add_option("--format", check_format, "csv|summary|json-lines");

    // rays
    auto* rays_cmd = app.add_subcommand("rays", "extreme rays of a named cone");
    std::string cone_name = "quantum-ingleton-4";
    std::string rays_format = "table";
    rays_cmd->add_option("cone", cone_name, "quantum-ingleton-4|quantum-4|pure-5");
    rays_cmd->add_option("--format", rays_format, "table|csv|json-lines");

    // states
    auto* states_cmd = app.add_subcommand("states", "paper witness states");
    std::string tag_name;
    bool want_stab = false, want_entropy = false, want_density = false;
    states_cmd->add_option("tag", tag_name, "R0..R6 or quantum_counterexample")->required();
    states_cmd->add_flag("--stab", want_stab, "print the stabiliser file");
    states_cmd->add_flag("--entropy", want_entropy, "print the entropy vector CSV");
    states_cmd->add_flag("--density", want_density, "print the density-matrix file");

    // group
    auto* group_cmd = app.add_subcommand("group", "poly-matroid of a group file, as CSV");
    std::string group_file;
    bool is_dist = false;
    group_cmd->add_option("file", group_file)->required();
    group_cmd->add_flag("--dist", is_dist, "input is a joint distribution file");

    // verify-paper
    auto* verify_cmd = app.add_subcommand("verify-paper", "run the full acceptance pipeline");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.get_name() << ": " << e.what() << '\n';
        return 2;
    }

    if (*entropy_cmd) {
        auto v = entropy_from_file(entropy_file,
                                   serial ? ExecPolicy::serial : ExecPolicy::parallel);
        v.write_csv(out);
        return 0;
    }

    if (*check_cmd) {
        std::ifstream in(check_file);
        if (!in) throw std::invalid_argument("cannot open '" + check_file + "'");
        auto v = EntropyVector::read_csv(in);
        auto instances = build_families(v.system(), families);
        auto report = ineq::check(v, instances, check_file);
        if (check_format == "csv") {
            report.write_csv(out);
        } else if (check_format == "summary") {
            out << report.summary() << '\n';
        } else if (check_format == "json-lines") {
            for (const auto& r : report.results) {
                out << "{\"instance\":\"" << r.name << "\",\"margin_bits\":" << r.margin.value_bits
                    << ",\"violated\":" << (r.violated ? "true" : "false") << "}\n";
            }
        } else {
            throw std::invalid_argument("unknown format '" + check_format + "'");
        }
        err << report.summary() << '\n';
        return report.all_satisfied() ? 0 : 1;
    }

    if (*rays_cmd) {
        if (cone_name == "quantum-ingleton-4") {
            auto cone_h = cone::build_quantum_ingleton_cone();
            auto rays = cone::extreme_rays(cone_h);
            auto rep = cone::match_table1(rays);
            if (rays_format == "table") {
                if (!rep.matched)
                    throw std::runtime_error("ray set does not match Table 1: " + rep.detail);
                print_rays_table(out, rays, rep);
            } else if (rays_format == "csv") {
                print_rays_csv(out, rays, PartySystem::alphabetic(4));
            } else if (rays_format == "json-lines") {
                print_rays_jsonl(out, rays);
            } else {
                throw std::invalid_argument("unknown format '" + rays_format + "'");
            }
            return 0;
        }
        std::vector<cone::Ray> rays;
        if (cone_name == "quantum-4") {
            cone::RationalCone c;
            c.dim = 15;
            for (const auto& inst : ineq::quantum_family(PartySystem::alphabetic(4))) c.add(inst);
            rays = cone::extreme_rays(c);
        } else if (cone_name == "pure-5") {
            auto c = cone::build_pure_5party_cone();
            for (auto& r : cone::extreme_rays(c)) rays.push_back(cone::from_pure_rows(r));
            std::sort(rays.begin(), rays.end());
        } else {
            throw std::invalid_argument("unknown cone '" + cone_name + "'");
        }
        if (rays_format == "json-lines")
            print_rays_jsonl(out, rays);
        else
            print_rays_csv(out, rays, PartySystem::alphabetic(4));
        return 0;
    }

    if (*states_cmd) {
        auto tag = stab::parse_tag(tag_name);
        if (!want_stab && !want_entropy && !want_density) want_entropy = true;
        if (tag == stab::PaperTag::QuantumCounterexample) {
            if (want_stab)
                throw std::invalid_argument(
                    "quantum_counterexample is not a stabiliser state; use --density");
            auto rho = quantum::ingleton_violating_state();
            if (want_density) quantum::write_density(out, rho);
            if (want_entropy)
                quantum::entropy_vector(rho, PartySystem::alphabetic(4)).write_csv(out);
            return 0;
        }
        if (want_density)
            throw std::invalid_argument("--density applies only to quantum_counterexample");
        auto g = stab::build_paper_group(tag);
        if (want_stab) stab::write_stab(out, g);
        if (want_entropy) stab::entropy_vector(g).write_csv(out);
        return 0;
    }

    if (*group_cmd) {
        std::ifstream in(group_file);
        if (!in) throw std::invalid_argument("cannot open '" + group_file + "'");
        if (is_dist) {
            auto d = groups::Distribution::read(in);
            groups::classical_polymatroid(d).write_csv(out);
        } else {
            auto fam = groups::read_group_family(in);
            groups::group_polymatroid(fam).write_csv(out);
        }
        return 0;
    }

    if (*verify_cmd) return verify::run_and_print(out, seed) ? 0 : 1;

    return 2;  // unreachable: a subcommand is required
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return run_unlocked(args, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace entrocone::cli
