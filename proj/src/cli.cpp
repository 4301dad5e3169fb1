#include "fhs/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fhs/errors.hpp"
#include "fhs/pipeline.hpp"

namespace fhs {

namespace {

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Errc::internal_inconsistency:
            return 4;
        case Errc::validation_failed:
        case Errc::parse_error:
        case Errc::unknown_family:
        case Errc::param_violation:
            return 3;
        default:
            return 3;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::validation_failed, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Errc::validation_failed, "cannot write " + path);
    out << text;
}

struct GenerateOpts {
    std::string family;
    std::string out_path;
    bool permissive = false;
    std::vector<i64> u_list;
    std::map<std::string, i64> params;
};

int do_generate(const GenerateOpts& o, std::ostream& out) {
    FamilyRequest req;
    req.family = family_from_name(o.family);
    req.params = o.params;
    req.u_list = o.u_list;
    req.strict = !o.permissive;
    AssembleResult res = assemble(req);
    write_file(o.out_path, serialize_fhs(res.set));
    write_file(o.out_path + ".report", serialize_report(res.report));
    write_file(o.out_path + ".trace", serialize_trace(res.trace));
    for (const auto& w : res.warnings) out << "warning: " << w << "\n";
    out << "generated family=" << o.family << " n=" << res.set.n << " M=" << res.set.M
        << " lambda=" << res.set.lambda << " l=" << res.set.l
        << " strict=" << (res.report.strictly_optimal ? "yes" : "no") << " out=" << o.out_path << "\n";
    return 0;
}

int do_verify(const std::string& in_path, bool per_window, std::ostream& out) {
    const FHSSet s = parse_fhs(read_file(in_path));
    const VerificationReport rep = check_strict_optimality(s);
    out << "FHS n=" << s.n << " M=" << s.M << " l=" << s.l << " lambda=" << s.lambda << "\n";
    for (const auto& row : rep.rows)
        if (per_window || !row.meet)
            out << "L=" << row.L << " H=" << row.H << " bound=" << row.bound << ' '
                << (row.meet ? "MEET" : "GAP") << "\n";
    out << "STRICT=" << (rep.strictly_optimal ? "yes" : "no") << "\n";
    return rep.strictly_optimal ? 0 : 1;
}

int do_bound(i64 n, i64 M, i64 l, i64 L, std::ostream& out) {
    out << bound_partial(n, M, l, L == 0 ? n : L) << "\n";
    return 0;
}

int do_catalog(const std::string& family, i64 max_n, std::ostream& out) {
    const auto entries = emit_parameter_table(family_from_name(family), max_n);
    for (const auto& e : entries)
        out << family << ' ' << e.params << " -> (" << e.n << ',' << e.M << ',' << e.lambda << ';'
            << e.l << ")\n";
    out << "total=" << entries.size() << "\n";
    return 0;
}

int do_inspect(const std::string& in_path, std::ostream& out) {
    const std::string text = read_file(in_path);
    if (text.rfind("FHS ", 0) == 0) {
        const FHSSet s = parse_fhs(text);
        out << "FHS n=" << s.n << " M=" << s.M << " l=" << s.l << " lambda=" << s.lambda << "\n";
        for (i64 j = 0; j < s.M; ++j) {
            std::vector<char> used(static_cast<std::size_t>(s.l), 0);
            for (i64 sym : s.seq[static_cast<std::size_t>(j)]) used[static_cast<std::size_t>(sym)] = 1;
            i64 distinct = 0;
            for (char u : used) distinct += u;
            out << "seq " << j << ": symbols-used=" << distinct << "/" << s.l << "\n";
        }
        return 0;
    }
    if (text.rfind("PACKING ", 0) == 0) {
        const NestedFamily f = parse_family(text);
        out << "PACKING n=" << f.modulus << " kind=" << (f.kind == PackingKind::CDP ? "CDP" : "CRDP")
            << " g=" << f.forbidden_order << " lambda=" << f.index << " members=" << f.member_count()
            << "\n";
        for (std::size_t j = 0; j < f.member_count(); ++j) {
            out << "member " << j << ": blocks=" << f.members[j].size() << " elements="
                << f.member_weight(j) << " verified=" << (verify_packing(f.member_packing(j)).ok ? "yes" : "no")
                << "\n";
        }
        out << "nested-verified=" << (verify_nested(f).ok ? "yes" : "no") << "\n";
        return 0;
    }
    raise(Errc::parse_error, "unrecognized file header");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"strictly optimal frequency-hopping sequence sets"};
    app.require_subcommand(1);

    GenerateOpts gen;
    auto* generate = app.add_subcommand("generate", "construct a family and write FHS/report/trace files");
    generate->add_option("--family", gen.family, "family name (d3 uv2 uv5 p4 p5 euv d4 uv4 uv3)")->required();
    generate->add_option("--out", gen.out_path, "output path for the FHS file")->required();
    generate->add_flag("--permissive", gen.permissive, "downgrade constraint violations to warnings");
    for (const char* key : {"q", "m", "d", "w", "p", "v", "e", "qprime"}) {
        generate->add_option_function<i64>(
            std::string("--") + key, [&gen, key](i64 value) { gen.params[key] = value; },
            std::string("family parameter ") + key);
    }
    generate->add_option("--u", gen.u_list, "u-list for p4/p5 (repeatable)");

    std::string verify_in;
    bool per_window = false;
    auto* verify = app.add_subcommand("verify", "check strict optimality of an FHS file");
    verify->add_option("--in", verify_in, "FHS file")->required();
    verify->add_flag("--per-window", per_window, "print every window length, not only failures");

    i64 bn = 0, bM = 0, bl = 0, bL = 0;
    auto* bound = app.add_subcommand("bound", "print the partial Peng-Fan bound");
    bound->add_option("--n", bn, "period")->required();
    bound->add_option("--M", bM, "sequence count")->required();
    bound->add_option("--l", bl, "alphabet size")->required();
    bound->add_option("--L", bL, "window length (default n)");

    std::string cat_family;
    i64 max_n = 0;
    auto* catalog = app.add_subcommand("catalog", "list feasible instances of a family");
    catalog->add_option("--family", cat_family, "family name")->required();
    catalog->add_option("--max-n", max_n, "length cap")->required();

    std::string inspect_in;
    auto* inspect = app.add_subcommand("inspect", "summarize an FHS or PACKING file");
    inspect->add_option("--in", inspect_in, "input file")->required();

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (generate->parsed()) return do_generate(gen, out);
        if (verify->parsed()) return do_verify(verify_in, per_window, out);
        if (bound->parsed()) return do_bound(bn, bM, bl, bL, out);
        if (catalog->parsed()) return do_catalog(cat_family, max_n, out);
        if (inspect->parsed()) return do_inspect(inspect_in, out);
    } catch (const Error& e) {
        err << errc_name(e.code()) << ": " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace fhs
