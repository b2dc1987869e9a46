#include "fibercov/cli.hpp"

#include <cstdint>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fibercov/engel_numeric.hpp"
#include "fibercov/error.hpp"
#include "fibercov/io.hpp"

namespace fibercov::cli {

namespace {

std::array<long long, 3> parse_triple(const std::string& text, const std::string& flag)
{
    std::array<long long, 3> v{};
    std::istringstream ss(text);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ','))
    {
        if (i == 3)
            throw CLI::ValidationError(flag, "expected three comma-separated integers");
        std::size_t used = 0;
        try
        {
            v[i] = std::stoll(item, &used);
        }
        catch (const std::exception&)
        {
            used = 0;
        }
        if (used == 0 || used != item.size())
            throw CLI::ValidationError(flag, "'" + item + "' is not an integer");
        ++i;
    }
    if (i != 3)
        throw CLI::ValidationError(flag, "expected three comma-separated integers");
    return v;
}

std::string verdict(bool yes, const std::string& word, const Options& opts)
{
    const std::string text = word + ": " + (yes ? "yes" : "no");
    if (!opts.color)
        return text;
    return (yes ? "\x1b[32m" : "\x1b[31m") + text + "\x1b[0m";
}

/// Default contact labels for the trivial-bundle enumeration: every 2-torsion
/// class of H^2 (the admissible candidates) followed by each remaining generator.
std::vector<ContactLabel> default_labels(const ComplexPtr& M)
{
    GroupPtr H2 = M->cohomology(2);
    std::vector<ContactLabel> labels;
    std::vector<CohomologyClass> seen;
    const auto two_torsion = two_torsion_euler_classes(M);
    std::size_t tau = 0;
    for (const auto& e : two_torsion)
    {
        std::string name = "0";
        if (!e.is_zero())
            name = two_torsion.size() == 2 ? "tau" : "tau" + std::to_string(++tau);
        labels.push_back(ContactLabel::from_class(name, e));
        seen.push_back(e);
    }
    auto add = [&](const std::string& name, const CohomologyClass& e) {
        for (const auto& s : seen)
            if (s == e)
                return;
        labels.push_back(ContactLabel::from_class(name, e));
        seen.push_back(e);
    };
    for (std::size_t i = 0; i < H2->torsion_orders().size(); ++i)
    {
        IntVector t(H2->torsion_orders().size());
        t[i] = 1;
        add("t" + std::to_string(i + 1), H2->make_class(IntVector(H2->free_rank()), t));
    }
    for (std::size_t i = 0; i < H2->free_rank(); ++i)
    {
        IntVector f(H2->free_rank());
        f[i] = 1;
        add("g" + std::to_string(i + 1), H2->make_class(f));
    }
    return labels;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Options& opts)
{
    CLI::App app{"Fiberwise coverings of circle bundles and Engel structures", "fibercov"};
    app.require_subcommand(1);
    app.allow_extras(false);

    io::Loader loader;
    std::function<int()> action;

    // cohomology
    std::string cx_ref;
    int degree = 0;
    auto* coh = app.add_subcommand("cohomology", "Integral cohomology group H^k of a complex");
    coh->add_option("complex", cx_ref, "complex file or builtin:t3 / builtin:rp3 / builtin:circle")->required();
    coh->add_option("--degree", degree, "degree k")->required();
    coh->callback([&] {
        action = [&] {
            ComplexPtr X = loader.complex(cx_ref);
            if (degree < 0 || degree > X->dimension())
                throw CLI::ValidationError("--degree", "must lie in [0, " + std::to_string(X->dimension()) + "]");
            out << "H^" << degree << " = " << X->cohomology(degree)->describe() << '\n';
            return 0;
        };
    });

    // complex export
    auto* cx = app.add_subcommand("complex", "Complex utilities");
    cx->require_subcommand(1);
    std::string export_ref;
    auto* cx_export = cx->add_subcommand("export", "Write a complex in the text format");
    cx_export->add_option("complex", export_ref, "complex reference")->required();
    cx_export->callback([&] {
        action = [&] {
            io::write_complex(out, *loader.complex(export_ref));
            return 0;
        };
    });

    // covering ...
    auto* cov = app.add_subcommand("covering", "Fiberwise coverings between circle bundles");
    cov->require_subcommand(1);

    std::string eq, ep;
    long long sheets = 0;
    auto* exists = cov->add_subcommand("exists", "Find an n-fold fiberwise covering Q -> P");
    exists->add_option("--eq", eq, "source bundle file")->required();
    exists->add_option("--ep", ep, "target bundle file")->required();
    exists->add_option("-n", sheets, "number of sheets (>= 1)")->required();
    exists->callback([&] {
        action = [&] {
            if (sheets < 1)
                throw CLI::ValidationError("-n", "number of sheets must be >= 1");
            const std::string q = io::canonical_ref(eq), p = io::canonical_ref(ep);
            auto phi = exists_covering(loader.bundle(q), loader.bundle(p), sheets);
            if (!phi)
            {
                out << "none\n";
                return kNo;
            }
            io::write_covering(out, *phi, q, p);
            return kYes;
        };
    });

    std::string phi1, phi2;
    auto pair_command = [&](const std::string& name, const std::string& help) {
        auto* sub = cov->add_subcommand(name, help);
        sub->add_option("--phi1", phi1, "covering file")->required();
        sub->add_option("--phi2", phi2, "covering file")->required();
        return sub;
    };
    pair_command("distance", "Horizontal distance class in H^1")->callback([&] {
        action = [&] {
            const auto a = loader.covering(phi1);
            const auto b = loader.covering(phi2);
            out << "d = " << horizontal_distance(a.covering, b.covering).to_string() << '\n';
            return 0;
        };
    });
    pair_command("homotopic", "Decide homotopy of two coverings")->callback([&] {
        action = [&] {
            const auto a = loader.covering(phi1);
            const auto b = loader.covering(phi2);
            const bool yes = homotopic(a.covering, b.covering);
            out << verdict(yes, "homotopic", opts) << '\n';
            return yes ? kYes : kNo;
        };
    });
    pair_command("isomorphic", "Decide isomorphism of two coverings")->callback([&] {
        action = [&] {
            const auto a = loader.covering(phi1);
            const auto b = loader.covering(phi2);
            const bool yes = isomorphic(a.covering, b.covering);
            out << verdict(yes, "isomorphic", opts) << '\n';
            return yes ? kYes : kNo;
        };
    });

    std::string alpha_file, phi;
    auto* act_cmd = cov->add_subcommand("act", "Act on a covering by a 1-cocycle");
    act_cmd->add_option("--alpha", alpha_file, "degree-1 cocycle file")->required();
    act_cmd->add_option("--phi", phi, "covering file")->required();
    act_cmd->callback([&] {
        action = [&] {
            const auto loaded = loader.covering(phi);
            const Cochain alpha = loader.cochain(io::canonical_ref(alpha_file), loaded.covering.base(), 1);
            if (!alpha.is_cocycle())
                throw FormatError(io::canonical_ref(alpha_file), 0, "alpha is not a cocycle");
            io::write_covering(out, act(alpha, loaded.covering), loaded.source_ref, loaded.target_ref);
            return 0;
        };
    });

    // engel ...
    auto* eng = app.add_subcommand("engel", "Engel structures with fiber-tangent characteristic line");
    eng->require_subcommand(1);

    std::string q_file, xi_file;
    long long tw = 0;
    bool oriented = false;
    auto* classify = eng->add_subcommand("classify", "Decide whether Eng^n_xi(Q) is nonempty; print a representative");
    classify->add_option("--q", q_file, "bundle file")->required();
    classify->add_option("--xi", xi_file, "contact label file")->required();
    classify->add_option("-n", tw, "twisting number (nonzero)")->required();
    classify->add_flag("--oriented", oriented, "require an oriented representative");
    classify->callback([&] {
        action = [&] {
            if (tw == 0)
                throw CLI::ValidationError("-n", "twisting number must be nonzero");
            const std::string q = io::canonical_ref(q_file), x = io::canonical_ref(xi_file);
            const CircleBundle Q = loader.bundle(q);
            const ContactLabel xi = loader.contact(x);
            auto D = oriented ? make_oriented_engel_class(Q, xi, tw) : make_engel_class(Q, xi, tw);
            if (!D)
            {
                out << "none\n";
                return kNo;
            }
            io::write_engel(out, *D, q, x);
            return kYes;
        };
    });

    std::string d1, d2;
    auto engel_pair = [&](const std::string& name, const std::string& help) {
        auto* sub = eng->add_subcommand(name, help);
        sub->add_option("--d1", d1, "Engel class file")->required();
        sub->add_option("--d2", d2, "Engel class file")->required();
        return sub;
    };
    engel_pair("twist", "Relative twist class in H^1")->callback([&] {
        action = [&] {
            const auto a = loader.engel(d1);
            const auto b = loader.engel(d2);
            out << "twist = " << twist(a.engel, b.engel).to_string() << '\n';
            return 0;
        };
    });
    engel_pair("isotopic", "Decide isotopy of two Engel classes")->callback([&] {
        action = [&] {
            const auto a = loader.engel(d1);
            const auto b = loader.engel(d2);
            const bool yes = isotopic(a.engel, b.engel);
            out << verdict(yes, "isotopic", opts) << '\n';
            return yes ? kYes : kNo;
        };
    });

    std::string base_ref;
    long long max_n = 0;
    auto* enumerate = eng->add_subcommand("enumerate-trivial", "Classification report for the trivial bundle");
    enumerate->add_option("--base", base_ref, "base complex")->required();
    enumerate->add_option("--max-n", max_n, "report twisting numbers -N..N except 0")->required();
    enumerate->callback([&] {
        action = [&] {
            if (max_n < 1)
                throw CLI::ValidationError("--max-n", "must be >= 1");
            ComplexPtr M = loader.complex(base_ref);
            if (M->dimension() < 2)
                throw CLI::ValidationError("--base", "base complex must have dimension >= 2");
            std::vector<long long> tws;
            for (long long n = -max_n; n <= max_n; ++n)
                if (n != 0)
                    tws.push_back(n);
            for (const auto& row : enumerate_trivial_bundle(CircleBundle::trivial(M), tws, default_labels(M)))
                out << row.to_string() << '\n';
            return 0;
        };
    });

    long long torus_n = 0;
    std::string alpha_text = "0,0,0", alpha2_text = "0,0,0";
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    auto* verify = eng->add_subcommand("verify-torus", "Numerically verify the Engel torus family");
    verify->add_option("-n", torus_n, "twisting parameter")->required();
    verify->add_option("--alpha", alpha_text, "a,b,c");
    verify->add_option("--samples", samples, "number of sample points")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "PRNG seed");
    verify->callback([&] {
        action = [&] {
            numeric::TorusEngelParams p{torus_n, parse_triple(alpha_text, "--alpha")};
            const auto report = numeric::verify_engel(p, samples, seed);
            std::string text = report.to_text();
            if (opts.color)
            {
                const auto at = text.rfind("engel: ");
                text.insert(at + 7, report.pass ? "\x1b[32m" : "\x1b[31m");
                text.insert(text.find(' ', at + 12), "\x1b[0m");
            }
            out << text;
            return report.pass ? kYes : kNo;
        };
    });

    int loop = 1;
    auto* twist_torus = eng->add_subcommand("twist-torus", "Numeric twist of two torus Engel structures along a loop");
    twist_torus->add_option("-n", torus_n, "twisting parameter (shared)")->required();
    twist_torus->add_option("--alpha", alpha_text, "a,b,c")->required();
    twist_torus->add_option("--alpha2", alpha2_text, "a,b,c")->required();
    twist_torus->add_option("--loop", loop, "coordinate loop 1, 2 or 3")->required()->check(CLI::Range(1, 3));
    twist_torus->callback([&] {
        action = [&] {
            const auto a = parse_triple(alpha_text, "--alpha"), b = parse_triple(alpha2_text, "--alpha2");
            const auto m = numeric::twist_numeric({torus_n, a}, {torus_n, b}, loop);
            out << "twist " << m.twist << " residual " << numeric::format_real(m.residual) << " samples "
                << m.samples << '\n'
                << "development_winding " << numeric::development_winding(a, b, loop) << '\n';
            return 0;
        };
    });

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        return action ? action() : kUsage;
    }
    catch (const CLI::ParseError& e)
    {
        return app.exit(e, out, err) == 0 ? 0 : kUsage;
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

} // namespace fibercov::cli
