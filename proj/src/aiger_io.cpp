#include "als/aiger_io.hpp"

#include <fstream>
#include <sstream>

namespace als {

namespace {

constexpr const char* kProvenance = "als approximate logic synthesis tool";

struct Cursor {
    const std::string& text;
    size_t pos = 0;

    bool eof() const { return pos >= text.size(); }

    std::string line() {
        size_t end = text.find('\n', pos);
        std::string out;
        if (end == std::string::npos) {
            out = text.substr(pos);
            pos = text.size();
        } else {
            out = text.substr(pos, end - pos);
            pos = end + 1;
        }
        if (!out.empty() && out.back() == '\r') out.pop_back();
        return out;
    }
};

uint64_t parse_uint(const std::string& tok, const char* what) {
    if (tok.empty()) throw AigerError(std::string("missing ") + what);
    uint64_t v = 0;
    for (char c : tok) {
        if (c < '0' || c > '9')
            throw AigerError(std::string("malformed ") + what + ": '" + tok + "'");
        v = v * 10 + static_cast<uint64_t>(c - '0');
        if (v > 0xffffffffULL) throw AigerError(std::string(what) + " out of range");
    }
    return v;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

void check_literal(uint64_t lit, uint64_t max_var, const char* what) {
    if (lit / 2 > max_var)
        throw AigerError(std::string("dangling literal in ") + what + ": " + std::to_string(lit));
}

AigNetwork parse_ascii(Cursor& cur, uint64_t m, uint64_t i, uint64_t o, uint64_t a) {
    AigNetwork net(static_cast<uint32_t>(i));
    for (uint64_t k = 0; k < i; ++k) {
        auto toks = split_ws(cur.line());
        if (toks.size() != 1) throw AigerError("malformed input line");
        uint64_t lit = parse_uint(toks[0], "input literal");
        if (lit != 2 * (k + 1))
            throw AigerError("non-canonical input literal " + std::to_string(lit));
    }
    std::vector<uint64_t> po_lits(o);
    for (uint64_t k = 0; k < o; ++k) {
        auto toks = split_ws(cur.line());
        if (toks.size() != 1) throw AigerError("malformed output line");
        po_lits[k] = parse_uint(toks[0], "output literal");
        check_literal(po_lits[k], m, "output");
    }
    for (uint64_t k = 0; k < a; ++k) {
        auto toks = split_ws(cur.line());
        if (toks.size() != 3) throw AigerError("malformed and line");
        uint64_t lhs = parse_uint(toks[0], "and lhs");
        uint64_t rhs0 = parse_uint(toks[1], "and rhs0");
        uint64_t rhs1 = parse_uint(toks[2], "and rhs1");
        uint64_t var = i + 1 + k;
        if (lhs != 2 * var)
            throw AigerError("non-canonical and lhs " + std::to_string(lhs));
        check_literal(rhs0, m, "and");
        check_literal(rhs1, m, "and");
        if (rhs0 / 2 >= var || rhs1 / 2 >= var)
            throw AigerError("fanin index >= node index (acyclicity violation) at lhs " +
                             std::to_string(lhs));
        net.add_and(Literal(static_cast<uint32_t>(rhs0)), Literal(static_cast<uint32_t>(rhs1)));
    }
    for (uint64_t lit : po_lits) net.add_po(Literal(static_cast<uint32_t>(lit)));
    return net;
}

// Binary "aig" body: outputs as ASCII lines, then delta-coded and gates.
AigNetwork parse_binary(Cursor& cur, uint64_t m, uint64_t i, uint64_t o, uint64_t a) {
    AigNetwork net(static_cast<uint32_t>(i));
    std::vector<uint64_t> po_lits(o);
    for (uint64_t k = 0; k < o; ++k) {
        auto toks = split_ws(cur.line());
        if (toks.size() != 1) throw AigerError("malformed output line");
        po_lits[k] = parse_uint(toks[0], "output literal");
        check_literal(po_lits[k], m, "output");
    }
    auto byte = [&]() -> uint32_t {
        if (cur.eof()) throw AigerError("truncated binary and section");
        return static_cast<unsigned char>(cur.text[cur.pos++]);
    };
    auto delta = [&]() {
        uint64_t x = 0;
        unsigned shift = 0;
        uint32_t ch;
        while ((ch = byte()) & 0x80u) {
            x |= uint64_t{ch & 0x7fu} << shift;
            shift += 7;
        }
        return x | (uint64_t{ch} << shift);
    };
    for (uint64_t k = 0; k < a; ++k) {
        uint64_t lhs = 2 * (i + 1 + k);
        uint64_t d0 = delta();
        uint64_t rhs0 = lhs - d0;
        uint64_t d1 = delta();
        uint64_t rhs1 = rhs0 - d1;
        if (d0 == 0 || d0 > lhs || d1 > rhs0)
            throw AigerError("invalid delta encoding in binary and section");
        net.add_and(Literal(static_cast<uint32_t>(rhs0)), Literal(static_cast<uint32_t>(rhs1)));
    }
    for (uint64_t lit : po_lits) net.add_po(Literal(static_cast<uint32_t>(lit)));
    return net;
}

}  // namespace

AigNetwork parse_aiger(const std::string& text) {
    Cursor cur{text};
    auto header = split_ws(cur.line());
    if (header.size() != 6 || (header[0] != "aag" && header[0] != "aig"))
        throw AigerError("malformed header");
    bool binary = header[0] == "aig";
    uint64_t m = parse_uint(header[1], "M");
    uint64_t i = parse_uint(header[2], "I");
    uint64_t l = parse_uint(header[3], "L");
    uint64_t o = parse_uint(header[4], "O");
    uint64_t a = parse_uint(header[5], "A");
    if (l != 0) throw AigerError("latches are not supported (L != 0)");
    if (m != i + a)
        throw AigerError("non-canonical header: M != I + A");

    AigNetwork net = binary ? parse_binary(cur, m, i, o, a) : parse_ascii(cur, m, i, o, a);

    // Symbol table and comment section.
    while (!cur.eof()) {
        size_t mark = cur.pos;
        std::string line = cur.line();
        if (line == "c") {
            net.comment = cur.text.substr(cur.pos);
            cur.pos = cur.text.size();
            break;
        }
        if (!line.empty() && (line[0] == 'i' || line[0] == 'o' || line[0] == 'l')) {
            net.symbols.push_back(line);
        } else if (line.empty()) {
            continue;
        } else {
            (void)mark;
            throw AigerError("unexpected trailing line: '" + line + "'");
        }
    }
    return net;
}

AigNetwork read_aiger_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw AigerError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    AigNetwork net = parse_aiger(buf.str());
    if (net.name.empty()) {
        size_t slash = path.find_last_of('/');
        std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
        size_t dot = base.find_last_of('.');
        net.name = dot == std::string::npos ? base : base.substr(0, dot);
    }
    return net;
}

std::string write_aiger(const AigNetwork& net) {
    std::ostringstream out;
    out << "aag " << net.num_pis() + net.and_count() << ' ' << net.num_pis() << " 0 "
        << net.po_count() << ' ' << net.and_count() << '\n';
    for (uint32_t k = 1; k <= net.num_pis(); ++k) out << 2 * k << '\n';
    for (Literal po : net.pos()) out << po.value << '\n';
    for (uint32_t k = 0; k < net.and_count(); ++k) {
        const AndNode& n = net.ands()[k];
        out << 2 * net.and_var(k) << ' ' << n.left.value << ' ' << n.right.value << '\n';
    }
    for (const std::string& sym : net.symbols) out << sym << '\n';
    out << "c\n" << kProvenance << '\n';
    if (!net.name.empty()) out << net.name << '\n';
    return out.str();
}

void write_aiger_file(const AigNetwork& net, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw AigerError("cannot write '" + path + "'");
    out << write_aiger(net);
}

}  // namespace als
