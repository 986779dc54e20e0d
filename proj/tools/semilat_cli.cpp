#include "semilat/semilat.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace semilat;

namespace {

enum Exit : int { ok = 0, failure = 1, usage = 2, precondition = 3, size_limit = 4, verification = 5 };

struct CliError {
    int code;
    std::string kind;
    std::string message;
};

void output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_file(path, text);
}

FiniteLattice load_lattice(const std::string& path) { return parse_lattice(read_file(path)); }

// "1,2;3" -> {{1,2},{3}}
std::vector<std::vector<std::size_t>> parse_partition(const std::string& spec) {
    std::vector<std::vector<std::size_t>> out;
    std::istringstream chains(spec);
    std::string chain;
    while (std::getline(chains, chain, ';')) {
        std::vector<std::size_t> c;
        std::istringstream items(chain);
        std::string item;
        while (std::getline(items, item, ',')) {
            item = detail::trim(item);
            if (item.empty()) continue;
            if (!std::all_of(item.begin(), item.end(), [](unsigned char ch) { return std::isdigit(ch); }))
                throw CliError{usage, "usage", "bad partition element '" + item + "'"};
            c.push_back(std::stoull(item));
        }
        out.push_back(std::move(c));
    }
    if (out.empty()) throw CliError{usage, "usage", "empty partition"};
    return out;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string join_list(const std::vector<std::size_t>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    return s;
}

int cmd_check(const std::string& file) {
    const FiniteLattice l = load_lattice(file);
    const PredicateProfile p = predicate_profile(l);
    const JirPoset j = join_irreducibles(l);
    std::cout << "size: " << l.size() << '\n'
              << "semimodular: " << yes_no(p.semimodular) << '\n'
              << "distributive: " << yes_no(p.distributive) << '\n'
              << "modular: " << yes_no(p.modular) << '\n'
              << "join-distributive: " << yes_no(p.join_distributive) << '\n'
              << "geometric: " << yes_no(p.geometric) << '\n'
              << "length: " << l.length() << '\n'
              << "jir: " << j.size() << '\n'
              << "atoms: " << atoms(l).size() << '\n'
              << "width-jir: " << poset_width(j.order) << '\n';
    return ok;
}

int cmd_info(const std::string& file, const std::string& dot) {
    const LatticeFile f = parse_lattice_file(read_file(file));
    const FiniteLattice& l = f.lattice;
    const JirPoset j = join_irreducibles(l);
    std::cout << "size: " << l.size() << '\n'
              << "bottom: " << l.bottom() << '\n'
              << "top: " << l.top() << '\n'
              << "covers: " << l.order().covers().size() << '\n'
              << "length: " << l.length() << '\n'
              << "jir: " << join_list(j.elements) << '\n'
              << "atoms: " << join_list(atoms(l)) << '\n';
    if (!dot.empty()) {
        Subset jir = j.members;
        output(emit_dot(l, {{"Jir", jir, "style=filled,fillcolor=lightblue"}}, f.names), dot);
    }
    return ok;
}

int cmd_lower(const std::string& file, std::size_t e, std::size_t h, const std::string& route, const std::string& out,
              const std::string& trace, const std::string& dot) {
    auto l = std::make_shared<const FiniteLattice>(load_lattice(file));
    std::optional<LoweringResult> direct, geo;
    if (route == "direct" || route == "both") direct = lower_direct(l, e, h);
    if (route == "geometry" || route == "both") geo = lower_via_geometry(l, e, h);
    if (direct && geo) {
        if (!are_isomorphic(*direct->K, *geo->K))
            throw CliError{verification, "verification", "direct and geometric routes disagree"};
        std::cerr << "routes: isomorphic\n";
    }
    const LoweringResult& r = direct ? *direct : *geo;
    std::cerr << "D: " << to_string(r.D) << "\nN: " << to_string(r.N) << "\ne': " << r.e_prime
              << "\nsize: " << r.K->size() << '\n';
    output(emit_lattice(*r.K), out);
    if (!trace.empty()) write_file(trace, write_trace(trace_of(r)));
    if (!dot.empty()) output(emit_dot(*r.K, lowering_highlights(r)), dot);
    return ok;
}

void report_trace(const ExtensionTrace& t) {
    std::cerr << "steps: " << t.steps.size() << "\nsize: " << t.final->size() << '\n';
    if (const std::string p = trace_problems(t); !p.empty()) throw CliError{verification, "verification", p};
}

int run_extension(const std::function<ExtensionTrace()>& run, const std::string& out, const std::string& trace) {
    try {
        const ExtensionTrace t = run();
        report_trace(t);
        output(emit_lattice(*t.final), out);
        if (!trace.empty()) write_file(trace, write_trace(t));
        return ok;
    } catch (const SizeLimitError& err) {
        if (!trace.empty()) write_file(trace, write_trace(err.partial()));
        throw;
    }
}

int cmd_extend(const std::string& file, const std::string& mode, std::size_t limit, const std::string& partition,
               const std::string& out, const std::string& trace) {
    const FiniteLattice l = load_lattice(file);
    if (mode == "geometric") {
        if (!partition.empty()) throw CliError{usage, "usage", "--partition applies to --mode chains only"};
        return run_extension([&] { return extend_to_geometric(l, limit); }, out, trace);
    }
    if (partition.empty()) throw CliError{usage, "usage", "--mode chains needs --partition"};
    ChainPartition part;
    part.chains = parse_partition(partition);
    return run_extension([&] { return extend_parallel_chains(l, part, limit); }, out, trace);
}

int cmd_rect(const std::string& file, const std::string& partition, std::size_t limit, const std::string& out,
             const std::string& trace) {
    const FiniteLattice l = load_lattice(file);
    std::size_t k = 0;
    const int rc = run_extension(
        [&] {
            RectangularExtension r =
                partition.empty() ? rectangular_extension(l, limit) : rectangular_extension(l, parse_partition(partition), limit);
            k = r.k;
            return r.trace;
        },
        out, trace);
    std::cerr << "k: " << k << '\n';
    return rc;
}

int cmd_search(const std::string& pred_name, std::uint64_t seed, std::size_t depth, const std::string& out,
               const std::string& trace) {
    const auto parsed = predicate_from_string(pred_name);
    if (!parsed) throw CliError{usage, "usage", "unknown predicate '" + pred_name + "'"};
    const Predicate pred = *parsed;
    CorpusSpec spec;
    spec.seed = seed;
    spec.lowering_depth = depth;
    const auto found = search_counterexample(generate_corpus(spec), pred);
    if (!found) {
        std::cout << "counterexample: none\n";
        return ok;
    }
    std::cout << "counterexample: " << found->name << "\ne: " << found->e << "\nh: " << found->h
              << "\nsize-K: " << found->K->size() << '\n';
    if (found->sublattice) {
        std::vector<std::size_t> s(found->sublattice->begin(), found->sublattice->end());
        std::cout << (pred == Predicate::modular ? "N5" : "M3") << " in K: " << join_list(s) << '\n';
    }
    if (!out.empty()) write_file(out, emit_lattice(*found->K));
    if (!trace.empty()) write_file(trace, write_trace(trace_of(lower_direct(found->L, found->e, found->h))));
    return ok;
}

int cmd_enum(const std::string& poset_file, std::optional<std::size_t> exact_length, std::optional<std::size_t> max_flats,
             const std::string& extension_of, const std::string& out) {
    const Poset p = parse_poset(read_file(poset_file));
    if (extension_of.empty()) {
        EnumerationOptions opts;
        opts.exact_length = exact_length;
        opts.max_flats = max_flats;
        std::cout << "geometries: " << count_geometries(p, opts) << '\n';
        return ok;
    }
    const FiniteLattice l = load_lattice(extension_of);
    const ExtensionSearchResult r = exhaustive_extension_search(l, p, max_flats);
    std::cout << "geometries-examined: " << r.geometries_examined << '\n';
    if (!r.witness) {
        std::cout << "extension: absent\n";
        return ok;
    }
    std::cout << "extension: found\nsize: " << r.witness->size() << "\nembedding: " << join_list(r.embedding) << '\n';
    if (!out.empty()) write_file(out, emit_lattice(*r.witness));
    return ok;
}

int cmd_verify_trace(const std::string& file) {
    const ReplayReport rep = replay_trace(read_file(file));
    std::cout << "steps: " << rep.trace.steps.size() << '\n';
    for (const auto& p : rep.problems) std::cout << "problem: " << p << '\n';
    std::cout << (rep.ok ? "trace: ok\n" : "trace: FAILED\n");
    return rep.ok ? ok : verification;
}

int fail(int code, const std::string& kind, const std::string& message) {
    std::cerr << "error[" << kind << "]: " << message << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite semimodular lattices: checks, lowerings and extensions"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    std::string file, out, trace, dot, route = "direct", mode = "geometric", partition, predicate, extension_of;
    std::size_t e = 0, h = 0, limit = default_size_limit, depth = 2;
    std::uint64_t seed = 7;
    std::optional<std::size_t> exact_length, max_flats;

    auto* check = app.add_subcommand("check", "Report the predicate profile of a lattice");
    check->add_option("file", file, "Lattice file")->required();

    auto* info = app.add_subcommand("info", "Summarize a lattice");
    info->add_option("file", file, "Lattice file")->required();
    info->add_option("--dot", dot, "Write a DOT diagram ('-' for stdout)");

    auto* lower = app.add_subcommand("lower", "Lower a join-irreducible e to a new cover of h");
    lower->add_option("file", file, "Lattice file")->required();
    lower->add_option("--e", e, "Join-irreducible to lower")->required();
    lower->add_option("--h", h, "Element strictly below the lower cover of e")->required();
    lower->add_option("--route", route, "Construction route")->check(CLI::IsMember({"direct", "geometry", "both"}));
    lower->add_option("-o,--output", out, "Write K here instead of stdout");
    lower->add_option("--trace", trace, "Write a trace file");
    lower->add_option("--dot", dot, "Write a DOT diagram of K with D, N and e' highlighted");

    auto* extend = app.add_subcommand("extend", "Length-preserving extension by repeated lowering");
    extend->add_option("file", file, "Lattice file")->required();
    extend->add_option("--mode", mode, "Target")->check(CLI::IsMember({"geometric", "chains"}));
    extend->add_option("--limit", limit, "Maximum element count");
    extend->add_option("--partition", partition, "Chain partition of Jir, e.g. '1,2;3'");
    extend->add_option("-o,--output", out, "Write the final lattice here instead of stdout");
    extend->add_option("--trace", trace, "Write a trace file");

    auto* rect = app.add_subcommand("rect", "Extension into a k-dimensional rectangular lattice");
    rect->add_option("file", file, "Lattice file")->required();
    rect->add_option("--partition", partition, "Chain cover of Jir to use instead of a minimum one");
    rect->add_option("--limit", limit, "Maximum element count");
    rect->add_option("-o,--output", out, "Write the final lattice here instead of stdout");
    rect->add_option("--trace", trace, "Write a trace file");

    auto* search = app.add_subcommand("search-counterexample", "Find a lowering that breaks a predicate");
    search->add_option("--predicate", predicate, "distributive, modular or join-distributive")->required();
    search->add_option("--seed", seed, "Corpus seed");
    search->add_option("--depth", depth, "Random lowering depth in the corpus");
    search->add_option("-o,--output", out, "Write the lowered lattice K");
    search->add_option("--trace", trace, "Write the witness as a one-step trace");

    auto* enumerate = app.add_subcommand("enum-geometries", "Count geometries on a poset, or search extensions");
    enumerate->add_option("file", file, "Poset file")->required();
    enumerate->add_option("--exact-length", exact_length, "Only geometries of this length");
    enumerate->add_option("--max-flats", max_flats, "Abort when a geometry needs more flats");
    enumerate->add_option("--find-extension-of", extension_of, "Lattice to extend");
    enumerate->add_option("-o,--output", out, "Write the witness lattice");

    auto* verify = app.add_subcommand("verify-trace", "Replay and re-verify a trace file");
    verify->add_option("file", file, "Trace file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& err) {
        return app.exit(err);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return usage;
    }

    try {
        if (*check) return cmd_check(file);
        if (*info) return cmd_info(file, dot);
        if (*lower) return cmd_lower(file, e, h, route, out, trace, dot);
        if (*extend) return cmd_extend(file, mode, limit, partition, out, trace);
        if (*rect) return cmd_rect(file, partition, limit, out, trace);
        if (*search) return cmd_search(predicate, seed, depth, out, trace);
        if (*enumerate) return cmd_enum(file, exact_length, max_flats, extension_of, out);
        if (*verify) return cmd_verify_trace(file);
    } catch (const CliError& err) {
        return fail(err.code, err.kind, err.message);
    } catch (const ParseError& err) {
        return fail(failure, "parse", err.what());
    } catch (const NotALatticeError& err) {
        return fail(failure, "not-a-lattice", err.what());
    } catch (const SizeLimitError& err) {
        return fail(size_limit, "size-limit", err.what());
    } catch (const BoundExceededError& err) {
        return fail(size_limit, "bound-exceeded", err.what());
    } catch (const CapExceededError& err) {
        return fail(size_limit, "cap-exceeded", err.what());
    } catch (const VerificationError& err) {
        return fail(verification, "verification", err.what());
    } catch (const PreconditionError& err) {
        return fail(precondition, "precondition", err.what());
    } catch (const NotSemimodularError& err) {
        return fail(precondition, "not-semimodular", err.what());
    } catch (const NotDistributiveError& err) {
        return fail(precondition, "not-distributive", err.what());
    } catch (const NotAPartitionError& err) {
        return fail(precondition, "not-a-partition", err.what());
    } catch (const IndexError& err) {
        return fail(precondition, "index", err.what());
    } catch (const std::invalid_argument& err) {
        return fail(usage, "usage", err.what());
    } catch (const std::exception& err) {
        return fail(failure, "error", err.what());
    }
    return usage;
}
