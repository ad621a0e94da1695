#include "irmia/iofmt.hpp"

#include <fstream>
#include <sstream>

namespace irmia {

ParseError::ParseError(int line, int column, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line), column_(column) {}

namespace {

bool bare_char(char c) {
    return !(c == ' ' || c == '\t' || c == '\r' || c == ',' || c == '"' || c == '#');
}

struct Token {
    std::string text;
    int column;
    bool quoted;
};

class LineLexer {
public:
    LineLexer(std::string_view line, int lineno) : s_(line), lineno_(lineno) {}

    void skip_space() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '#') pos_ = s_.size();
    }
    bool at_end() {
        skip_space();
        return pos_ >= s_.size();
    }
    int column() const { return static_cast<int>(pos_) + 1; }
    char peek() {
        skip_space();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    void expect_char(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    // Reads a bare or quoted name. Trailing markers are left for the caller.
    Token name(const char* what) {
        skip_space();
        Token t{"", column(), false};
        if (pos_ < s_.size() && s_[pos_] == '"') {
            t.quoted = true;
            ++pos_;
            while (true) {
                if (pos_ >= s_.size()) fail("unterminated quoted name");
                char c = s_[pos_++];
                if (c == '"') break;
                if (c == '\\') {
                    if (pos_ >= s_.size()) fail("unterminated escape");
                    c = s_[pos_++];
                }
                t.text += c;
            }
            if (t.text.empty()) fail(std::string("empty ") + what);
            return t;
        }
        while (pos_ < s_.size() && bare_char(s_[pos_])) t.text += s_[pos_++];
        if (t.text.empty()) fail(std::string("expected ") + what);
        return t;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(lineno_, column(), msg); }
    [[noreturn]] void fail_at(int col, const std::string& msg) const { throw ParseError(lineno_, col, msg); }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
    int lineno_;
};

std::vector<std::string> name_list(LineLexer& lx, const char* what) {
    std::vector<std::string> v;
    if (lx.at_end()) return v;
    while (true) {
        v.push_back(lx.name(what).text);
        if (lx.at_end()) break;
        lx.expect_char(',');
    }
    return v;
}

std::string escape_quoted(const std::string& n) {
    std::string r = "\"";
    for (char c : n) {
        if (c == '"' || c == '\\') r += '\\';
        r += c;
    }
    return r + "\"";
}

std::string dot_escape(const std::string& n) {
    std::string r;
    for (char c : n) {
        if (c == '"' || c == '\\') r += '\\';
        r += c;
    }
    return r;
}

}  // namespace

std::string format_name(const std::string& n) {
    bool bare = !n.empty();
    for (char c : n)
        if (!bare_char(c)) bare = false;
    if (bare && (n.front() == '?' || n.front() == '!' || n.back() == '*' || n.back() == '!')) bare = false;
    return bare ? n : escape_quoted(n);
}

Description parse_description(std::string_view text) {
    Description d;
    bool have_header = false;
    bool have_initial = false;
    bool have_failure = false;
    int lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++lineno;
        LineLexer lx(line, lineno);
        if (lx.at_end()) {
            if (end == text.size()) break;
            continue;
        }
        int kw_col = lx.column();
        Token kw = lx.name("keyword");
        if (kw.quoted) lx.fail_at(kw_col, "expected keyword");
        if (!have_header && kw.text != "irmia") lx.fail_at(kw_col, "file must start with 'irmia <name>'");
        if (kw.text == "irmia") {
            if (have_header) lx.fail_at(kw_col, "duplicate 'irmia' header");
            d.name = lx.name("automaton name").text;
            have_header = true;
        } else if (kw.text == "inputs") {
            for (auto& a : name_list(lx, "input name")) d.alphabet.inputs.push_back(a);
            continue;
        } else if (kw.text == "outputs") {
            for (auto& a : name_list(lx, "output name")) d.alphabet.outputs.push_back(a);
            continue;
        } else if (kw.text == "states") {
            if (lx.at_end()) continue;
            while (true) {
                Token t = lx.name("state name");
                std::string n = t.text;
                bool init = false, fail = false;
                if (!t.quoted) {
                    while (!n.empty() && (n.back() == '*' || n.back() == '!')) {
                        (n.back() == '*' ? init : fail) = true;
                        n.pop_back();
                    }
                    if (n.empty()) lx.fail_at(t.column, "state name missing before marker");
                } else {
                    while (lx.peek() == '*' || lx.peek() == '!') {
                        (lx.peek() == '*' ? init : fail) = true;
                        lx.expect_char(lx.peek());
                    }
                }
                if (init) {
                    if (have_initial) lx.fail_at(t.column, "second initial state '" + n + "'");
                    d.initial = n;
                    have_initial = true;
                }
                if (fail) {
                    if (have_failure) lx.fail_at(t.column, "second failure state '" + n + "'");
                    d.failure = n;
                    have_failure = true;
                }
                d.states.push_back(n);
                if (lx.at_end()) break;
                lx.expect_char(',');
            }
            continue;
        } else if (kw.text == "must" || kw.text == "may") {
            Description::RawEdge e;
            e.mod = kw.text == "must" ? Modality::Must : Modality::MayOnly;
            e.src = lx.name("source state").text;
            int act_col = lx.column();
            char sigil = lx.peek();
            if (sigil == '?' || sigil == '!') {
                lx.expect_char(sigil);
                e.action = lx.name("action name").text;
                bool in = d.alphabet.has_input(e.action), out = d.alphabet.has_output(e.action);
                if (!in && !out) lx.fail_at(act_col, "action '" + e.action + "' is not declared");
                if (sigil == '?' && !in) lx.fail_at(act_col, "'" + e.action + "' is an output but written with '?'");
                if (sigil == '!' && !out) lx.fail_at(act_col, "'" + e.action + "' is an input but written with '!'");
            } else {
                Token t = lx.name("action");
                if (t.quoted || t.text != kTauName)
                    lx.fail_at(act_col, "action must be '?input', '!output' or 'tau'");
                e.action = kTauName;
            }
            e.dst = lx.name("target state").text;
            d.edges.push_back(std::move(e));
        } else {
            lx.fail_at(kw_col, "unknown keyword '" + kw.text + "'");
        }
        if (!lx.at_end()) lx.fail("unexpected trailing text");
        if (end == text.size()) break;
    }
    if (!have_header) throw ParseError(1, 1, "missing 'irmia <name>' header");
    if (!have_initial) throw ParseError(lineno, 1, "no initial state (mark one state with '*')");
    if (!have_failure) {
        for (const auto& s : d.states)
            if (s == "_PHI") throw ParseError(lineno, 1, "state '_PHI' declared without '!' marker");
        d.states.push_back("_PHI");
        d.failure = "_PHI";
    }
    return d;
}

IrMia parse(std::string_view text) { return IrMia(parse_description(text)); }

IrMia load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string serialize(const IrMia& a) {
    std::string out = "irmia " + format_name(a.name()) + "\n";
    auto list = [&](const char* kw, const std::vector<std::string>& v) {
        out += kw;
        for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : " ") + format_name(v[k]);
        out += "\n";
    };
    list("inputs", a.alphabet().inputs);
    list("outputs", a.alphabet().outputs);
    out += "states";
    for (StateId s = 0; s < a.num_states(); ++s) {
        out += (s ? ", " : " ") + format_name(a.state_name(s));
        if (s == a.initial()) out += "*";
        if (s == a.failure()) out += "!";
    }
    out += "\n";
    for (const auto& e : a.edges()) {
        out += e.mod == Modality::Must ? "must " : "may ";
        out += format_name(a.state_name(e.src)) + " ";
        if (a.is_tau(e.action)) out += kTauName;
        else out += (a.is_input(e.action) ? "?" : "!") + format_name(a.action_name(e.action));
        out += " " + format_name(a.state_name(e.dst)) + "\n";
    }
    return out;
}

void save_file(const IrMia& a, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << serialize(a);
}

std::string to_dot(const IrMia& a) {
    std::string out = "digraph \"" + dot_escape(a.name()) + "\" {\n";
    out += "  rankdir=LR;\n";
    out += "  node [shape=circle];\n";
    out += "  __start [shape=point, label=\"\"];\n";
    for (StateId s = 0; s < a.num_states(); ++s) {
        out += "  \"" + dot_escape(a.state_name(s)) + "\"";
        if (s == a.failure()) out += " [shape=doublecircle]";
        out += ";\n";
    }
    out += "  __start -> \"" + dot_escape(a.state_name(a.initial())) + "\";\n";
    for (const auto& e : a.edges()) {
        std::string label = a.is_tau(e.action) ? "τ" : (a.is_input(e.action) ? "?" : "!") + a.action_name(e.action);
        out += "  \"" + dot_escape(a.state_name(e.src)) + "\" -> \"" + dot_escape(a.state_name(e.dst)) +
               "\" [label=\"" + dot_escape(label) + "\", style=" +
               (e.mod == Modality::Must ? "solid" : "dashed") + "];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace irmia
