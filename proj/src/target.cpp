#include "twistedbad/target.hpp"
#include "twistedbad/weights.hpp"

#include <sstream>

namespace tb {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    int paren_depth = 0;
    for (char c : text) {
        if (c == '(') ++paren_depth;
        if (c == ')') --paren_depth;
        if (c == sep && paren_depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

// GMP does not accept a leading '+'.
Int parse_int(const std::string& text) {
    std::string s = trim(text);
    if (!s.empty() && s[0] == '+') s = s.substr(1);
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    return Int(s, 10);
}

CertifiedReal parse_quad(const std::string& body) {
    // (a+b*sqrt(d))/c with optional integer suffix: (..)/c+k or (..)/c-k
    auto open = body.find('(');
    auto close = body.rfind(')');
    if (open != 0 || close == std::string::npos)
        throw std::invalid_argument("quad source must look like (a+b*sqrt(d))/c: '" + body + "'");
    // The inner sqrt parens make rfind(')') ambiguous; find the ')' that
    // closes the first '(' by depth counting.
    int depth = 0;
    std::size_t end = std::string::npos;
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (body[i] == '(') ++depth;
        if (body[i] == ')') {
            --depth;
            if (depth == 0) {
                end = i;
                break;
            }
        }
    }
    if (end == std::string::npos) throw std::invalid_argument("unbalanced parentheses in '" + body + "'");
    std::string inner = body.substr(1, end - 1);
    std::string rest = body.substr(end + 1);
    if (rest.empty() || rest[0] != '/')
        throw std::invalid_argument("quad source missing /c in '" + body + "'");
    rest = rest.substr(1);
    // rest = c possibly followed by +k / -k
    std::size_t suffix_pos = std::string::npos;
    for (std::size_t i = 1; i < rest.size(); ++i) {
        if (rest[i] == '+' || rest[i] == '-') {
            suffix_pos = i;
            break;
        }
    }
    Int c = parse_int(suffix_pos == std::string::npos ? rest : rest.substr(0, suffix_pos));
    Int shift(0);
    if (suffix_pos != std::string::npos) shift = parse_int(rest.substr(suffix_pos));

    // inner = a+b*sqrt(d)  (a may carry a sign; b may carry a sign)
    auto sqrt_pos = inner.find("sqrt(");
    if (sqrt_pos == std::string::npos) throw std::invalid_argument("quad source missing sqrt in '" + body + "'");
    auto d_end = inner.find(')', sqrt_pos);
    Int d = parse_int(inner.substr(sqrt_pos + 5, d_end - sqrt_pos - 5));
    // locate "b*" before sqrt: scan back past '*'
    std::size_t star = inner.rfind('*', sqrt_pos);
    if (star == std::string::npos) throw std::invalid_argument("quad source needs b*sqrt(d) in '" + body + "'");
    // the b term starts after the preceding top-level '+'/'-' that separates a
    std::size_t b_start = 0;
    for (std::size_t i = 1; i < star; ++i)
        if (inner[i] == '+' || inner[i] == '-') b_start = i;
    std::string a_str = trim(inner.substr(0, b_start));
    std::string b_str = trim(inner.substr(b_start, star - b_start));
    if (b_str == "+" || b_str.empty()) b_str = "1";
    if (b_str == "-") b_str = "-1";
    if (a_str.empty()) a_str = "0";
    Int a = parse_int(a_str), b = parse_int(b_str);
    QuadExpr q = QuadExpr::quadratic(a, b, d, c);
    q += QuadExpr(Rat(shift));
    return CertifiedReal::from_quad(q);
}

CertifiedReal parse_decimal(const std::string& body) {
    auto at = body.find('@');
    if (at == std::string::npos)
        throw std::invalid_argument("decimal source needs '<digits>@<bits>': '" + body + "'");
    Rat value = parse_rational(trim(body.substr(0, at)));
    std::string bits_str = trim(body.substr(at + 1));
    // tolerate a trailing "bits" word
    auto sp = bits_str.find_first_not_of("0123456789");
    if (sp != std::string::npos) bits_str = bits_str.substr(0, sp);
    long bits = std::stol(bits_str);
    return CertifiedReal::decimal_literal(value, bits);
}

}  // namespace

CertifiedReal TargetVector::parse_component(const std::string& text) {
    std::string s = trim(text);
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("component needs a 'kind:' prefix (rational/quad/decimal): '" + s + "'");
    std::string kind = s.substr(0, colon);
    std::string body = trim(s.substr(colon + 1));
    if (kind == "rational") return CertifiedReal::from_rational(parse_rational(body));
    if (kind == "quad") return parse_quad(body);
    if (kind == "decimal") return parse_decimal(body);
    throw std::invalid_argument("unknown component kind '" + kind + "'");
}

TargetVector TargetVector::parse(const std::string& text) {
    std::vector<CertifiedReal> comps;
    std::vector<std::string> descs;
    for (const auto& part : split(text, ',')) {
        std::string p = trim(part);
        if (p.empty()) throw std::invalid_argument("empty component in '" + text + "'");
        comps.push_back(parse_component(p));
        descs.push_back(p);
    }
    return TargetVector(std::move(comps), std::move(descs));
}

std::string TargetVector::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < descriptions_.size(); ++i) {
        if (i) os << ",";
        os << descriptions_[i];
    }
    return os.str();
}

WeightVector WeightVector::parse(const std::string& text) {
    std::vector<Rat> ws;
    for (const auto& part : split(text, ',')) {
        std::string p = trim(part);
        if (p.empty()) throw std::invalid_argument("empty weight in '" + text + "'");
        ws.push_back(parse_rational(p));
    }
    return WeightVector(std::move(ws));
}

std::string WeightVector::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (i) os << ",";
        os << rat_to_string(weights_[i]);
    }
    return os.str();
}

}  // namespace tb
