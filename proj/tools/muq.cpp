// muq: construct, decompose, and verify perfect q-ary codes built from
// mu-components.

#include "muq/census.hpp"
#include "muq/io.hpp"
#include "muq/kernels.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace muq;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct Global {
    bool json_out = false;
    int threads = 1;
    std::uint64_t seed = 0;
    std::string kernel;
};

void emit(const Global& g, const json& payload, const std::string& text) {
    if (g.json_out) std::cout << payload.dump() << '\n';
    else std::cout << text << '\n';
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Err::NotPerfect:
        case Err::NotPerfectResult:
        case Err::ComponentLawViolation:
        case Err::OuterNotPerfect: return 1;
        default: return 2;
    }
}

// ---- component build manifests ---------------------------------------------

struct BuildManifest {
    int q = 0, k = 0, t = 0;
    Word mu;
    std::string v = "linear", h = "linear";
    std::vector<std::string> V, H, partitions;
    std::string csharp = "zero";
    std::string Q = "linear";
    std::int64_t q_index = -1;
    fs::path dir;
};

BuildManifest read_build_manifest(const fs::path& p) {
    std::ifstream is(p);
    require(is.good(), Err::BadFile, "cannot read " + p.string());
    BuildManifest m;
    m.dir = p.parent_path();
    std::string line, mu_digits;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        std::string rest;
        std::getline(ls, rest);
        const auto start = rest.find_first_not_of(' ');
        rest = start == std::string::npos ? "" : rest.substr(start);
        if (key == "q") m.q = std::stoi(rest);
        else if (key == "k") m.k = std::stoi(rest);
        else if (key == "t") m.t = std::stoi(rest);
        else if (key == "mu") mu_digits = rest;
        else if (key == "v") m.v = rest;
        else if (key == "h") m.h = rest;
        else if (key == "V") m.V.push_back(rest);
        else if (key == "H") m.H.push_back(rest);
        else if (key == "partition") m.partitions.push_back(rest);
        else if (key == "partitions") m.partitions.assign(1, rest);
        else if (key == "csharp") m.csharp = rest;
        else if (key == "Q") {
            std::istringstream qs(rest);
            std::string tok;
            qs >> tok;
            if (tok == "index") qs >> m.q_index;
            else m.Q = rest;
        } else {
            fail(Err::BadFile, "unknown manifest key '" + key + "'");
        }
    }
    require(m.q >= 2 && m.k >= 1 && m.t >= 1, Err::BadFile, "manifest needs q, k, t");
    require(!mu_digits.empty(), Err::BadFile, "manifest needs mu");
    m.mu = parse_word(mu_digits, m.q);
    require(static_cast<int>(m.mu.size()) == m.t, Err::BadFile, "mu length must equal t");
    return m;
}

MultaryQuasigroup resolve_qg(const FieldTable& F, const std::string& spec, int arity,
                             const fs::path& dir, bool alpha_coeffs) {
    if (spec == "linear") {
        Word coeffs(arity, 1);
        if (alpha_coeffs) {
            require(arity <= F.q - 1, Err::BadFile, "not enough nonzero field elements");
            for (int i = 0; i < arity; ++i) coeffs[i] = static_cast<Sym>(i + 1);
        }
        return qg_linear(F, arity, coeffs, 0);
    }
    MultaryQuasigroup f = read_quasigroup_file(dir / spec);
    require(f.arity == arity && f.order == F.q, Err::BadFile,
            "quasigroup " + spec + " must be " + std::to_string(arity) + "-ary of order " +
                std::to_string(F.q));
    return f;
}

std::vector<MultaryQuasigroup> resolve_family(const FieldTable& F,
                                              const std::vector<std::string>& specs, int count,
                                              int arity, const fs::path& dir) {
    std::vector<MultaryQuasigroup> out;
    if (specs.empty() || (specs.size() == 1 && specs[0] == "linear")) {
        out.assign(count, qg_linear(F, arity, Word(arity, 1), 0));
        return out;
    }
    require(static_cast<int>(specs.size()) == count, Err::BadFile,
            "need " + std::to_string(count) + " quasigroup entries");
    for (const auto& s : specs) out.push_back(resolve_qg(F, s, arity, dir, false));
    return out;
}

MuComponent build_from_manifest(const BuildManifest& m, bool mollard) {
    const FieldTable F = field_make(m.q);
    const auto v = resolve_qg(F, m.v, m.q - 1, m.dir, false);
    const auto h = resolve_qg(F, m.h, m.q - 1, m.dir, true);
    const auto V = resolve_family(F, m.V, m.t, m.k + 1, m.dir);
    if (mollard) {
        const auto H = resolve_family(F, m.H, m.k, m.t + 1, m.dir);
        Code csharp;
        if (m.csharp == "zero") {
            require(m.k == 1, Err::BadFile, "csharp=zero is only perfect for k=1");
            csharp = Code::from_rows(m.q, 1, {0});
        } else {
            csharp = read_code_file(m.dir / m.csharp);
        }
        return build_mollard_phelps(F, m.mu, csharp, v, h, V, H);
    }
    std::vector<PerfectPartition> parts;
    if (m.partitions.empty() || (m.partitions.size() == 1 && m.partitions[0] == "coset")) {
        parts.assign(m.t + 1, perfect_partition(F, m.k));
    } else {
        require(static_cast<int>(m.partitions.size()) == m.t + 1, Err::BadFile,
                "need t+1 partition entries");
        for (const auto& s : m.partitions) parts.push_back(read_partition_file(m.dir / s));
    }
    const int order = (m.q - 1) * m.k + 1;
    MultaryQuasigroup Q;
    if (m.q_index >= 0) {
        auto pool = qg_first(m.t, order, static_cast<std::size_t>(m.q_index) + 1);
        require(pool.size() == static_cast<std::size_t>(m.q_index) + 1, Err::BadFile,
                "Q index beyond the enumeration stream");
        Q = std::move(pool.back());
    } else if (m.Q == "linear") {
        const FieldTable FQ = field_make(order);
        Q = qg_linear(FQ, m.t, Word(m.t, 1), 0);
    } else {
        Q = read_quasigroup_file(m.dir / m.Q);
        require(Q.arity == m.t && Q.order == order, Err::BadFile,
                "Q must be t-ary of order " + std::to_string(order));
    }
    return build_phelps(F, m.mu, parts, v, h, V, Q);
}

// ---- subcommand bodies -------------------------------------------------------

json perfect_json(const PerfectCheck& chk) {
    json j;
    j["perfect"] = chk.ok;
    if (!chk.ok) {
        j["kind"] = chk.kind == PerfectCheck::Fail::doubly_covered ? "doubly_covered" : "uncovered";
        j["witness"] = format_word(chk.witness);
    }
    return j;
}

int cmd_verify(const Global& g, const std::string& path) {
    const Code c = read_code_file(path);
    const auto chk = is_perfect(c);
    json j = perfect_json(chk);
    j["q"] = c.q;
    j["n"] = c.n;
    j["words"] = c.size();
    emit(g, j, chk.ok ? "perfect" : "not perfect: " + chk.detail);
    return chk.ok ? 0 : 1;
}

int cmd_bound(const Global& g, int n, int q) {
    const BoundReport rep = lower_bound(n, q);
    std::ostringstream line;
    line << rep.n << ' ' << rep.q << ' ' << rep.t << ' ' << rep.qcount << ' ' << rep.R << ' '
         << rep.bound.to_string();
    json j{{"n", rep.n},
           {"q", rep.q},
           {"t", rep.t},
           {"Q", rep.qcount},
           {"R", rep.R},
           {"bound", rep.bound.to_string()},
           {"provenance",
            rep.provenance == BoundReport::Source::enumerated ? "enumerated" : "formula"},
           {"sphere_denominator", rep.sphere_denom},
           {"printed_denominator", rep.printed_denom}};
    std::string text = line.str();
    if (rep.printed_denom != rep.sphere_denom) {
        std::ostringstream diag;
        diag << "# R uses sphere size " << rep.sphere_denom << "; the printed denominator "
             << rep.printed_denom << " would give ";
        if (rep.printed_R_integral) diag << "R=" << rep.printed_R;
        else diag << "a non-integral R";
        j["printed_R"] = rep.printed_R_integral ? json(rep.printed_R) : json(nullptr);
        text += "\n" + diag.str();
    }
    emit(g, j, text);
    return 0;
}

int cmd_decompose(const Global& g, const std::string& path, int r, const std::string& out) {
    const Code c = read_code_file(path);
    const FieldTable F = field_make(c.q);
    const Decomposition D = decompose(F, c, r);
    const auto chk = decomposition_verify(F, D, c, {.seed = g.seed, .threads = g.threads});
    if (!out.empty()) write_decomposition_bundle(out, D);
    json j{{"q", D.layout.q},   {"m", D.layout.m}, {"r", D.layout.r},
           {"t", D.layout.t},   {"s", D.layout.s}, {"l", D.layout.l},
           {"n0", D.layout.n0}, {"outer", D.outer.size()},
           {"components", D.components.size()},    {"verified", chk.ok}};
    std::ostringstream text;
    text << "q=" << D.layout.q << " m=" << D.layout.m << " r=" << D.layout.r << " t=" << D.layout.t
         << " s=" << D.layout.s << " l=" << D.layout.l << " n0=" << D.layout.n0
         << " components=" << D.components.size()
         << (chk.ok ? " verified" : (" INVALID: " + chk.detail));
    emit(g, j, text.str());
    return chk.ok ? 0 : 1;
}

int cmd_generate(const Global& g, int n, int q, std::uint64_t limit, const std::string& out) {
    const FieldTable F = field_make(q);
    const auto codes = generate_distinct_codes(F, n, q, limit, g.threads);
    for (std::size_t i = 0; i + 1 < codes.size(); ++i)
        for (std::size_t j = i + 1; j < codes.size(); ++j)
            require(!(codes[i] == codes[j]), Err::StructureViolation,
                    "generated codes are not pairwise distinct");
    if (!out.empty()) {
        fs::create_directories(out);
        for (std::size_t i = 0; i < codes.size(); ++i) {
            std::ostringstream name;
            name << "gen_" << std::setw(4) << std::setfill('0') << i << ".code";
            write_code_file(fs::path(out) / name.str(), codes[i]);
        }
    }
    json j{{"n", n}, {"q", q}, {"count", codes.size()}, {"distinct", true}, {"all_perfect", true}};
    emit(g, j,
         "generated " + std::to_string(codes.size()) +
             " pairwise-distinct perfect codes of length " + std::to_string(n));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"perfect q-ary codes from mu-components"};
    app.require_subcommand(1);

    Global g;
    app.add_flag("--json", g.json_out, "machine-readable output");
    app.add_option("--threads", g.threads, "worker threads (results are schedule independent)")
        ->default_val(1);
    app.add_option("--seed", g.seed, "seed for sampled verification")->default_val(0);
    app.add_option("--kernel", g.kernel, "force a distance kernel (scalar, swar, avx2)");

    int h_q = 0, h_r = 0;
    std::string h_out;
    auto* sc_hamming = app.add_subcommand("hamming", "write the Hamming code for (q, r)");
    sc_hamming->add_option("q", h_q)->required();
    sc_hamming->add_option("r", h_r)->required();
    sc_hamming->add_option("-o,--out", h_out, "output file (default stdout)");

    std::string v_path;
    auto* sc_verify = app.add_subcommand("verify", "covering check for a code file");
    sc_verify->add_option("code", v_path)->required();

    std::string md_path;
    auto* sc_mindist = app.add_subcommand("mindist", "exact minimum distance of a code file");
    sc_mindist->add_option("code", md_path)->required();

    std::string rk_path;
    auto* sc_rank = app.add_subcommand("rank", "GF(q) rank of a code file");
    sc_rank->add_option("code", rk_path)->required();

    int p_q = 0, p_n0 = 0;
    std::string p_out;
    auto* sc_partition = app.add_subcommand("partition", "perfect partition of F_q^{n0}");
    sc_partition->add_option("q", p_q)->required();
    sc_partition->add_option("n0", p_n0)->required();
    sc_partition->add_option("-o,--out", p_out, "output file (default stdout)");

    int qc_m = 0, qc_order = 0;
    auto* sc_qgcount = app.add_subcommand("qg-count", "count m-ary quasigroups of a given order");
    sc_qgcount->add_option("m", qc_m)->required();
    sc_qgcount->add_option("order", qc_order)->required();

    std::string c_kind, c_manifest, c_out;
    auto* sc_component = app.add_subcommand("component", "build a mu-component from a manifest");
    sc_component->add_option("kind", c_kind, "mollard or phelps")
        ->required()
        ->check(CLI::IsMember({"mollard", "phelps"}));
    sc_component->add_option("manifest", c_manifest)->required();
    sc_component->add_option("-o,--out", c_out, "component file to write")->required();

    std::string cb_manifest, cb_out;
    auto* sc_combine = app.add_subcommand("combine", "combine components into a perfect code");
    sc_combine->add_option("manifest", cb_manifest)->required();
    sc_combine->add_option("-o,--out", cb_out, "output code file (default stdout)");

    std::string sh_path, sh_mu, sh_out;
    auto* sc_shift = app.add_subcommand("shift", "translate a component to another mu");
    sc_shift->add_option("component", sh_path)->required();
    sc_shift->add_option("mu", sh_mu)->required();
    sc_shift->add_option("-o,--out", sh_out, "component file to write")->required();

    std::string d_path, d_out;
    int d_r = 0;
    auto* sc_decompose = app.add_subcommand("decompose", "decompose a perfect code into components");
    sc_decompose->add_option("code", d_path)->required();
    sc_decompose->add_option("r", d_r)->required();
    sc_decompose->add_option("-o,--out", d_out, "bundle directory to write");

    int b_n = 0, b_q = 0;
    auto* sc_bound = app.add_subcommand("bound", "lower bound on the number of perfect codes");
    sc_bound->add_option("n", b_n)->required();
    sc_bound->add_option("q", b_q)->required();

    int gen_n = 0, gen_q = 0;
    std::uint64_t gen_limit = 0;
    std::string gen_out;
    auto* sc_generate = app.add_subcommand("generate", "materialize distinct perfect codes");
    sc_generate->add_option("n", gen_n)->required();
    sc_generate->add_option("q", gen_q)->required();
    sc_generate->add_option("--limit", gen_limit, "number of codes (0 = exhaustive)")
        ->default_val(0);
    sc_generate->add_option("-o,--out", gen_out, "directory for the code files");

    for (auto* sc : app.get_subcommands({})) sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!g.kernel.empty()) kernels::select(g.kernel);

        if (*sc_hamming) {
            const FieldTable F = field_make(h_q);
            const Code c = hamming_code(F, h_r);
            if (h_out.empty()) write_code(std::cout, c);
            else write_code_file(h_out, c);
            return 0;
        }
        if (*sc_verify) return cmd_verify(g, v_path);
        if (*sc_mindist) {
            const Code c = read_code_file(md_path);
            const unsigned d = min_distance(c);
            emit(g, json{{"mindist", d}}, std::to_string(d));
            return 0;
        }
        if (*sc_rank) {
            const Code c = read_code_file(rk_path);
            const FieldTable F = field_make(c.q);
            const int rk = rank(F, c);
            emit(g, json{{"rank", rk}}, std::to_string(rk));
            return 0;
        }
        if (*sc_partition) {
            const FieldTable F = field_make(p_q);
            const auto part = perfect_partition(F, p_n0);
            if (p_out.empty()) write_partition(std::cout, part);
            else write_partition_file(p_out, part);
            return 0;
        }
        if (*sc_qgcount) {
            const std::uint64_t count = qg_count(qc_m, qc_order, g.threads);
            emit(g, json{{"m", qc_m}, {"order", qc_order}, {"count", count}},
                 std::to_string(count));
            return 0;
        }
        if (*sc_component) {
            const auto m = read_build_manifest(c_manifest);
            const MuComponent K = build_from_manifest(m, c_kind == "mollard");
            const auto chk = component_verify(K);
            require(chk.ok, Err::ComponentLawViolation, chk.detail);
            write_component_file(c_out, K);
            emit(g, json{{"mu", format_word(K.mu)}, {"words", K.code.size()}, {"n", K.code.n}},
                 "component mu=" + format_word(K.mu) + ": " + std::to_string(K.code.size()) +
                     " words of length " + std::to_string(K.code.n));
            return 0;
        }
        if (*sc_combine) {
            int man_q = 0;
            {
                std::ifstream is(cb_manifest);
                require(is.good(), Err::BadFile, "cannot read " + cb_manifest);
                is >> man_q;
            }
            const FieldTable F = field_make(man_q);
            const Assembly A = read_assembly_manifest(cb_manifest, F);
            const Code c = combine(F, A, {.verify_components = true, .threads = g.threads});
            if (cb_out.empty()) {
                write_code(std::cout, c);
            } else {
                write_code_file(cb_out, c);
                emit(g, json{{"words", c.size()}, {"n", c.n}, {"perfect", true}},
                     "perfect code with " + std::to_string(c.size()) + " words written to " +
                         cb_out);
            }
            return 0;
        }
        if (*sc_shift) {
            const MuComponent K = read_component_file(sh_path);
            const FieldTable F = field_make(K.layout.q);
            const Word mu = parse_word(sh_mu, K.layout.q);
            const MuComponent moved = component_shift(F, K, mu);
            write_component_file(sh_out, moved);
            emit(g, json{{"mu", format_word(moved.mu)}, {"words", moved.code.size()}},
                 "component shifted to mu=" + format_word(moved.mu));
            return 0;
        }
        if (*sc_decompose) return cmd_decompose(g, d_path, d_r, d_out);
        if (*sc_bound) return cmd_bound(g, b_n, b_q);
        if (*sc_generate) return cmd_generate(g, gen_n, gen_q, gen_limit, gen_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
