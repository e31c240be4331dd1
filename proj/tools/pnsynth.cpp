// pnsynth: command-line front end (synth, decompose, factorize, articulate, rg, bench)

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "pnsynth/articulation.hpp"
#include "pnsynth/bench.hpp"
#include "pnsynth/decomposer.hpp"
#include "pnsynth/error.hpp"
#include "pnsynth/factorization.hpp"
#include "pnsynth/io.hpp"
#include "pnsynth/synthesis.hpp"

using namespace pnsynth;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInput = 2, kResource = 3 };

Lts load(const std::string& path, bool strip) {
    Lts lts = read_lts(path);
    if (strip) {
        LabelSet useless;
        auto useful = useful_labels(lts);
        for (auto& l : lts.label_names())
            if (!useful.count(l)) useless.insert(l);
        lts = without_labels(lts, useless);
    }
    return lts;
}

void print_report(const SynthesisReport& rep) {
    switch (rep.outcome) {
        case SynthesisReport::Outcome::Rejected:
            std::cout << "Rejected: " << rep.rejected_check << '\n';
            return;
        case SynthesisReport::Outcome::Unsolvable:
            std::cout << "Unsolvable: " << rep.witness_text << '\n';
            return;
        case SynthesisReport::Outcome::Solved:
            std::cout << "Solved: " << rep.net->num_places() << " places, " << rep.net->num_transitions()
                      << " transitions (" << rep.method << ", regions " << rep.regions_used << ", reused "
                      << rep.problems_reused << ", " << rep.elapsed_ms << " ms)\n";
            return;
    }
}

void write_components(const std::string& dir, const std::string& stem, const std::vector<Lts>& parts) {
    std::filesystem::create_directories(dir);
    for (std::size_t k = 0; k < parts.size(); ++k) {
        auto path = std::filesystem::path(dir) / (stem + std::to_string(k + 1) + ".lts");
        write_file(path.string(), emit_lts(parts[k]));
        std::cout << "wrote " << path.string() << '\n';
    }
}

void collect_leaves(const DecompositionTree& t, std::vector<Lts>& out) {
    if (t.kind == DecompositionTree::Kind::Leaf) {
        out.push_back(t.lts);
        return;
    }
    for (auto& c : t.children) collect_leaves(c, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Petri net synthesis from labelled transition systems"};
    app.require_subcommand(1);

    std::string in, out, strategy = "mono", emit_dir, family, csv, component;
    std::size_t max_states = kDefaultMaxStates, max_n = 1, reps = 3;
    bool verify_flag = false, strip = false;
    std::vector<std::string> strategies{"mono", "mixed"};
    std::vector<std::string> attach;

    auto* synth = app.add_subcommand("synth", "synthesize a net from an LTS");
    synth->add_option("input", in, "LTS file")->required();
    synth->add_option("-o,--output", out, "write the net here");
    synth->add_option("--strategy", strategy, "mono|factor|artic|mixed")
        ->check(CLI::IsMember({"mono", "factor", "artic", "mixed"}));
    synth->add_flag("--verify", verify_flag, "check the reachability graph against the input");
    synth->add_option("--max-states", max_states, "state cap for reachability graphs");
    synth->add_flag("--strip-useless", strip, "drop labels that occur on no arc");

    auto* decomp = app.add_subcommand("decompose", "print the decomposition tree");
    decomp->add_option("input", in, "LTS file")->required();
    decomp->add_flag("--strip-useless", strip, "drop labels that occur on no arc");

    auto* fact = app.add_subcommand("factorize", "split into a disjoint product");
    fact->add_option("input", in, "LTS file")->required();
    fact->add_option("--emit-dir", emit_dir, "write the factors here");

    auto* artic = app.add_subcommand("articulate", "split into articulated components");
    artic->add_option("input", in, "LTS file")->required();
    artic->add_option("--emit-dir", emit_dir, "write the components here");

    auto* rg = app.add_subcommand("rg", "reachability graph of a net");
    rg->add_option("input", in, "net file")->required();
    rg->add_option("-o,--output", out, "write the graph here");
    rg->add_option("--max-states", max_states, "state cap");

    auto* bench = app.add_subcommand("bench", "time strategies on a generated family");
    bench->add_option("--family", family, "star|daisy|caterpillar|product_power")->required();
    bench->add_option("--component", component, "component LTS file")->required();
    bench->add_option("--max-n", max_n, "largest family size")->required();
    bench->add_option("--reps", reps, "repetitions per point (median)");
    bench->add_option("--csv", csv, "output CSV")->required();
    bench->add_option("--strategies", strategies, "mono factor artic mixed sum")->delimiter(',');
    bench->add_option("--attach", attach, "anchor states in the component")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }

    try {
        if (*synth) {
            Lts lts = load(in, strip);
            SynthesisOptions opts;
            opts.verify = verify_flag;
            opts.max_states = max_states;
            auto rep = run_strategy(strategy, lts, opts);
            print_report(rep);
            if (!rep.solved()) return kNegative;
            if (verify_flag) {
                std::cout << (rep.verified ? "verified\n" : "verification FAILED\n");
                if (!rep.verified) return kNegative;
            }
            if (out.empty())
                std::cout << emit_pn(*rep.net);
            else
                write_file(out, emit_pn(*rep.net));
            return kOk;
        }
        if (*decomp) {
            Lts lts = load(in, strip);
            if (auto bad = presynthesis(lts)) {
                std::cout << "Rejected: " << *bad << '\n';
                return kNegative;
            }
            auto tree = decompose(lts);
            std::cout << to_string(tree) << '\n';
            return kOk;
        }
        if (*fact) {
            Lts lts = read_lts(in);
            if (auto bad = presynthesis(lts)) {
                std::cout << "Rejected: " << *bad << '\n';
                return kNegative;
            }
            auto f = factorize(lts);
            if (f.factors.size() <= 1) {
                std::cout << "NotAProduct: a single label class\n";
                return kNegative;
            }
            for (auto& x : f.factors)
                std::cout << to_string(leaf(x)) << ": " << x.num_states() << " states\n";
            if (!emit_dir.empty()) write_components(emit_dir, "factor", f.factors);
            return kOk;
        }
        if (*artic) {
            Lts lts = read_lts(in);
            if (auto bad = presynthesis(lts)) {
                std::cout << "Rejected: " << *bad << '\n';
                return kNegative;
            }
            auto e = articul_expression(lts);
            if (!e) {
                std::cout << "NoArticulation\n";
                return kNegative;
            }
            std::cout << to_string(*e) << '\n';
            if (!emit_dir.empty()) {
                std::vector<Lts> parts;
                collect_leaves(articulation_tree(lts, *e), parts);
                write_components(emit_dir, "component", parts);
            }
            return kOk;
        }
        if (*rg) {
            auto net = read_pn(in);
            auto text = emit_lts(reachability_graph(net, max_states));
            if (out.empty())
                std::cout << text;
            else
                write_file(out, text);
            return kOk;
        }
        if (*bench) {
            FamilySpec spec{parse_family(family), read_lts(component), max_n, attach};
            auto records = run_bench(spec, strategies, reps);
            std::ofstream f(csv);
            if (!f) throw InputError("cannot write " + csv);
            write_csv(f, records);
            write_csv(std::cout, records);
            bool all = std::all_of(records.begin(), records.end(), [](auto& r) { return r.verified; });
            return all ? kOk : kNegative;
        }
    } catch (const NotAProduct& e) {
        std::cout << "NotAProduct: " << e.what() << '\n';
        return kNegative;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    }
    return kOk;
}
