#include "muq/io.hpp"

#include <fstream>
#include <sstream>

namespace muq {

namespace fs = std::filesystem;

namespace {

std::string next_content_line(std::istream& is, std::vector<std::string>* comments = nullptr) {
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (comments) comments->push_back(line);
            continue;
        }
        return line;
    }
    return {};
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream os(p, std::ios::binary);
    require(os.good(), Err::BadFile, "cannot write " + p.string());
    return os;
}

std::ifstream open_in(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    require(is.good(), Err::BadFile, "cannot read " + p.string());
    return is;
}

} // namespace

void write_code(std::ostream& os, const Code& c, std::span<const std::string> comments) {
    require(c.q <= 10, Err::BadFile, "code text format supports q <= 10");
    os << c.q << ' ' << c.n << '\n';
    for (const auto& line : comments) os << "# " << line << '\n';
    for (std::size_t i = 0; i < c.size(); ++i) os << format_word(c.row(i)) << '\n';
}

Code read_code(std::istream& is) {
    const std::string head = next_content_line(is);
    std::istringstream hs(head);
    int q = 0, n = -1;
    hs >> q >> n;
    require(q >= 2 && q <= 10 && n >= 1, Err::BadFile, "bad code header '" + head + "'");
    std::vector<Sym> rows;
    for (std::string line; !(line = next_content_line(is)).empty();) {
        const Word w = parse_word(line, q);
        require(static_cast<int>(w.size()) == n, Err::BadFile,
                "codeword '" + line + "' has length " + std::to_string(w.size()) + ", expected " +
                    std::to_string(n));
        rows.insert(rows.end(), w.begin(), w.end());
    }
    return Code::from_rows(q, n, std::move(rows));
}

void write_code_file(const fs::path& p, const Code& c) {
    auto os = open_out(p);
    write_code(os, c);
}

Code read_code_file(const fs::path& p) {
    auto is = open_in(p);
    return read_code(is);
}

void write_quasigroup(std::ostream& os, const MultaryQuasigroup& f) {
    os << f.arity << ' ' << f.order << '\n';
    for (std::size_t i = 0; i < f.table.size(); ++i)
        os << (i ? " " : "") << static_cast<int>(f.table[i]);
    os << '\n';
}

MultaryQuasigroup read_quasigroup(std::istream& is) {
    const std::string head = next_content_line(is);
    std::istringstream hs(head);
    int m = 0, order = 0;
    hs >> m >> order;
    require(m >= 1 && order >= 1 && order <= 16, Err::BadFile,
            "bad quasigroup header '" + head + "'");
    MultaryQuasigroup f;
    f.arity = m;
    f.order = order;
    const std::uint64_t want = ipow(order, m);
    f.table.reserve(want);
    int v;
    while (is >> v) {
        require(v >= 0 && v < order, Err::BadFile, "quasigroup value out of range");
        f.table.push_back(static_cast<Sym>(v));
    }
    require(f.table.size() == want, Err::BadFile,
            "quasigroup table has " + std::to_string(f.table.size()) + " values, expected " +
                std::to_string(want));
    const auto chk = qg_check(f);
    require(chk.ok, Err::BadFile, "table is not a quasigroup: " + chk.detail);
    return f;
}

void write_quasigroup_file(const fs::path& p, const MultaryQuasigroup& f) {
    auto os = open_out(p);
    write_quasigroup(os, f);
}

MultaryQuasigroup read_quasigroup_file(const fs::path& p) {
    auto is = open_in(p);
    return read_quasigroup(is);
}

void write_partition(std::ostream& os, const PerfectPartition& p) {
    require(p.q <= 10, Err::BadFile, "partition text format supports q <= 10");
    os << p.q << ' ' << p.n0 << ' ' << p.parts.size() << '\n';
    for (std::size_t k = 0; k < p.parts.size(); ++k) {
        if (k) os << "--\n";
        for (std::size_t i = 0; i < p.parts[k].size(); ++i)
            os << format_word(p.parts[k].row(i)) << '\n';
    }
}

PerfectPartition read_partition(std::istream& is) {
    const std::string head = next_content_line(is);
    std::istringstream hs(head);
    int q = 0, n0 = 0;
    std::size_t nparts = 0;
    hs >> q >> n0 >> nparts;
    require(q >= 2 && q <= 10 && n0 >= 1 && nparts >= 1, Err::BadFile,
            "bad partition header '" + head + "'");
    PerfectPartition p;
    p.q = q;
    p.n0 = n0;
    std::vector<Sym> rows;
    auto flush = [&]() {
        p.parts.push_back(Code::from_rows(q, n0, std::move(rows)));
        rows = {};
    };
    for (std::string line; !(line = next_content_line(is)).empty();) {
        if (line == "--") {
            flush();
            continue;
        }
        const Word w = parse_word(line, q);
        require(static_cast<int>(w.size()) == n0, Err::BadFile, "partition row length mismatch");
        rows.insert(rows.end(), w.begin(), w.end());
    }
    flush();
    require(p.parts.size() == nparts, Err::BadFile,
            "partition has " + std::to_string(p.parts.size()) + " parts, header says " +
                std::to_string(nparts));
    p.rebuild_gamma();
    return p;
}

void write_partition_file(const fs::path& p, const PerfectPartition& part) {
    auto os = open_out(p);
    write_partition(os, part);
}

PerfectPartition read_partition_file(const fs::path& p) {
    auto is = open_in(p);
    return read_partition(is);
}

void write_component_file(const fs::path& p, const MuComponent& K,
                          std::vector<std::string> sigma_refs, bool write_sigmas) {
    const auto& L = K.layout;
    if (sigma_refs.empty()) {
        for (int i = 0; i < L.t; ++i)
            sigma_refs.push_back(p.stem().string() + ".sigma" + std::to_string(i + 1) + ".qg");
    }
    require(static_cast<int>(sigma_refs.size()) == L.t, Err::BadFile,
            "need one sigma reference per block");
    if (write_sigmas) {
        for (int i = 0; i < L.t; ++i)
            write_quasigroup_file(p.parent_path() / sigma_refs[i], K.sigma.sigmas[i]);
    }
    std::vector<std::string> comments;
    comments.push_back("mu=" + format_word(K.mu));
    comments.push_back("t=" + std::to_string(L.t) + " l=" + std::to_string(L.l) +
                       " n0=" + std::to_string(L.n0));
    for (const auto& ref : sigma_refs) comments.push_back("sigma=" + ref);
    auto os = open_out(p);
    write_code(os, K.code, comments);
}

MuComponent read_component_file(const fs::path& p) {
    auto is = open_in(p);
    const std::string head = next_content_line(is);
    std::istringstream hs(head);
    int q = 0, n = -1;
    hs >> q >> n;
    require(q >= 2 && q <= 10 && n >= 1, Err::BadFile, "bad component header '" + head + "'");

    std::string mu_digits;
    int t = -1, l = -1, n0 = -1;
    std::vector<std::string> sigma_refs;
    std::vector<Sym> rows;
    std::string line;
    std::vector<std::string> comments;
    while (!(line = next_content_line(is, &comments)).empty()) {
        const Word w = parse_word(line, q);
        require(static_cast<int>(w.size()) == n, Err::BadFile, "component row length mismatch");
        rows.insert(rows.end(), w.begin(), w.end());
    }
    for (const auto& c : comments) {
        std::istringstream cs(c.substr(1));
        std::string tok;
        while (cs >> tok) {
            if (tok.rfind("mu=", 0) == 0) mu_digits = tok.substr(3);
            else if (tok.rfind("t=", 0) == 0) t = std::stoi(tok.substr(2));
            else if (tok.rfind("l=", 0) == 0) l = std::stoi(tok.substr(2));
            else if (tok.rfind("n0=", 0) == 0) n0 = std::stoi(tok.substr(3));
            else if (tok.rfind("sigma=", 0) == 0) sigma_refs.push_back(tok.substr(6));
        }
    }
    require(!mu_digits.empty() && t >= 1 && l >= 1 && n0 >= 0, Err::BadFile,
            "component file lacks mu/t/l/n0 headers");
    require(l * t + n0 == n, Err::BadFile, "component layout does not match word length");
    require(static_cast<int>(sigma_refs.size()) == t, Err::BadFile,
            "component file needs t sigma references");

    MuComponent K;
    K.layout = CodeParameters::from_blocks(q, t, l, n0);
    K.mu = parse_word(mu_digits, q);
    require(static_cast<int>(K.mu.size()) == t, Err::BadFile, "mu length != t");
    K.sigma.t = t;
    K.sigma.l = l;
    K.sigma.order = q;
    for (const auto& ref : sigma_refs) {
        MultaryQuasigroup f = read_quasigroup_file(p.parent_path() / ref);
        require(f.arity == l && f.order == q, Err::BadFile,
                "sigma file " + ref + " has wrong arity or order");
        K.sigma.sigmas.push_back(std::move(f));
    }
    K.code = Code::from_rows(q, n, std::move(rows));
    return K;
}

void write_assembly_manifest(const fs::path& p, int q, int m, int r, const std::string& outer_ref,
                             std::span<const std::pair<Word, std::string>> component_refs) {
    auto os = open_out(p);
    os << q << ' ' << m << ' ' << r << '\n';
    os << outer_ref << '\n';
    for (const auto& [mu, ref] : component_refs)
        os << "mu=" << format_word(mu) << " file=" << ref << '\n';
}

Assembly read_assembly_manifest(const fs::path& p, const FieldTable& F) {
    auto is = open_in(p);
    const std::string head = next_content_line(is);
    std::istringstream hs(head);
    int q = 0, m = 0, r = 0;
    hs >> q >> m >> r;
    require(q == F.q, Err::LayoutMismatch, "manifest q does not match the field");
    const std::string outer_ref = next_content_line(is);
    require(!outer_ref.empty(), Err::BadFile, "manifest lacks the outer code path");

    Assembly A;
    A.layout = CodeParameters::from_mr(q, m, r);
    A.outer = read_code_file(p.parent_path() / outer_ref);
    std::vector<MuComponent> comps;
    for (std::string line; !(line = next_content_line(is)).empty();) {
        std::istringstream ls(line);
        std::string tok, mu_digits, file_ref;
        while (ls >> tok) {
            if (tok.rfind("mu=", 0) == 0) mu_digits = tok.substr(3);
            else if (tok.rfind("file=", 0) == 0) file_ref = tok.substr(5);
        }
        require(!mu_digits.empty() && !file_ref.empty(), Err::BadFile,
                "bad manifest line '" + line + "'");
        MuComponent K = read_component_file(p.parent_path() / file_ref);
        require(K.mu == parse_word(mu_digits, q), Err::BadFile,
                "component file mu differs from manifest for " + file_ref);
        comps.push_back(std::move(K));
    }
    require(!comps.empty(), Err::BadFile, "manifest lists no components");
    Assembly out = Assembly::of(std::move(A.outer), std::move(comps));
    require(out.layout == A.layout, Err::LayoutMismatch,
            "component layout does not match the manifest q m r");
    return out;
}

void write_decomposition_bundle(const fs::path& dir, const Decomposition& D) {
    fs::create_directories(dir);
    {
        auto os = open_out(dir / "layout.txt");
        const auto& L = D.layout;
        os << L.q << ' ' << L.m << ' ' << L.r << ' ' << L.t << ' ' << L.s << ' ' << L.l << ' '
           << L.n0 << '\n';
    }
    {
        auto os = open_out(dir / "psi.txt");
        for (std::size_t i = 0; i < D.psi.perm.size(); ++i)
            os << (i ? " " : "") << D.psi.perm[i];
        os << '\n';
        for (std::size_t i = 0; i < D.psi.scale.size(); ++i)
            os << (i ? " " : "") << static_cast<int>(D.psi.scale[i]);
        os << '\n';
    }
    write_code_file(dir / "outer.code", D.outer);
    std::vector<std::string> sigma_refs;
    for (int i = 0; i < D.layout.t; ++i) {
        sigma_refs.push_back("sigma_" + std::to_string(i + 1) + ".qg");
        if (!D.components.empty())
            write_quasigroup_file(dir / sigma_refs.back(),
                                  D.components.front().second.sigma.sigmas[i]);
    }
    for (const auto& [mu, K] : D.components)
        write_component_file(dir / ("component_" + format_word(mu) + ".code"), K, sigma_refs,
                             false);
}

Decomposition read_decomposition_bundle(const fs::path& dir, const FieldTable& F) {
    Decomposition D;
    {
        auto is = open_in(dir / "layout.txt");
        const std::string head = next_content_line(is);
        std::istringstream hs(head);
        int q = 0, m = 0, r = 0, t = 0, s = 0, l = 0, n0 = 0;
        hs >> q >> m >> r >> t >> s >> l >> n0;
        require(q == F.q, Err::LayoutMismatch, "bundle q does not match the field");
        D.layout = CodeParameters::from_mr(q, m, r);
        require(D.layout.t == t && D.layout.s == s && D.layout.l == l && D.layout.n0 == n0,
                Err::BadFile, "layout.txt is inconsistent");
    }
    {
        auto is = open_in(dir / "psi.txt");
        const int n = D.layout.n;
        D.psi.perm.resize(n);
        D.psi.scale.resize(n);
        for (int i = 0; i < n; ++i) require(static_cast<bool>(is >> D.psi.perm[i]), Err::BadFile, "bad psi.txt");
        for (int i = 0; i < n; ++i) {
            int v;
            require(static_cast<bool>(is >> v), Err::BadFile, "bad psi.txt");
            D.psi.scale[i] = static_cast<Sym>(v);
        }
    }
    D.Hstar = parity_check_matrix(F.q, D.layout.r);
    D.outer = read_code_file(dir / "outer.code");
    const int plen = D.layout.l * D.layout.t;
    for (std::size_t i = 0; i < D.outer.size(); ++i) {
        const Word mu = D.outer.word_at(i);
        MuComponent K = read_component_file(dir / ("component_" + format_word(mu) + ".code"));
        require(K.mu == mu, Err::BadFile, "component mu mismatch in bundle");
        // rebuild the inner tables from the prefix grouping
        std::map<Word, Code> table;
        std::size_t a = 0;
        while (a < K.code.size()) {
            std::size_t b = a;
            while (b < K.code.size() && std::equal(K.code.row(a).begin(), K.code.row(a).begin() + plen,
                                                   K.code.row(b).begin()))
                ++b;
            std::vector<Sym> tails;
            for (std::size_t w = a; w < b; ++w) {
                const auto row = K.code.row(w);
                tails.insert(tails.end(), row.begin() + plen, row.end());
            }
            const auto row = K.code.row(a);
            table.emplace(Word(row.begin(), row.begin() + plen),
                          Code::from_rows(F.q, D.layout.n0, std::move(tails)));
            a = b;
        }
        D.inner.push_back(std::move(table));
        D.components.emplace_back(mu, std::move(K));
    }
    return D;
}

} // namespace muq
