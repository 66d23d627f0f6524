/*
  Copyright 2026 The certoset Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#include <cctype>
#include <fstream>
#include <sstream>

#include "certoset/cli.hpp"
#include "certoset/fractal.hpp"
#include "json.hpp"

namespace certoset::cli {

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    bool starts_ident() {
        char c = peek();
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        if (start == pos_) fail("expected a name");
        return std::string(s_.substr(start, pos_ - start));
    }
    bool starts_number() {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
    }
    // digits[.digits][/digits | *2^[-]digits]
    std::string number() {
        skip_ws();
        std::size_t start = pos_;
        auto digits = [&] {
            std::size_t d = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return pos_ > d;
        };
        bool any = digits();
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            any = digits() || any;
        }
        if (!any) fail("expected a number");
        if (pos_ + 1 < s_.size() && s_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
            ++pos_;
            digits();
        } else if (s_.substr(pos_, 3) == "*2^") {
            std::size_t save = pos_;
            pos_ += 3;
            if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
            if (!digits()) pos_ = save;
        }
        return std::string(s_.substr(start, pos_ - start));
    }
    // raw text up to the next ')' (file paths)
    std::string until_close() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] != ')') ++pos_;
        std::string_view v = s_.substr(start, pos_ - start);
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
        return std::string(v);
    }
    std::size_t pos() const { return pos_; }
    void reset(std::size_t p) { pos_ = p; }
    std::string_view text() const { return s_; }

    [[noreturn]] void fail(const std::string& what) const {
        throw InputError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

CReal literal(const std::string& text, const RealOptions& opts, const Cursor& cur) {
    try {
        return CReal(Dyadic::parse(text));
    } catch (const std::invalid_argument&) {
    }
    Rational r;
    try {
        r = parse_rational(text);
    } catch (const std::invalid_argument&) {
        cur.fail("malformed number \"" + text + "\"");
    }
    if (!opts.allow_rational) cur.fail("\"" + text + "\" is not a dyadic rational");
    return CReal::from_rational(r.num, r.den);
}

class RealParser {
public:
    RealParser(Cursor& cur, const RealOptions& opts) : cur_(cur), opts_(opts) {}

    CReal expr() {
        CReal v = term();
        for (;;) {
            if (cur_.eat('+'))
                v = v + term();
            else if (cur_.eat('-'))
                v = v - term();
            else
                return v;
        }
    }

private:
    CReal term() {
        CReal v = unary();
        while (cur_.eat('*')) v = v * unary();
        if (cur_.peek() == '/') cur_.fail("division is only supported inside literals such as 3/8");
        return v;
    }

    CReal unary() {
        if (cur_.eat('-')) return -unary();
        return primary();
    }

    CReal primary() {
        if (cur_.eat('(')) {
            CReal v = expr();
            cur_.expect(')');
            return v;
        }
        if (cur_.starts_number()) return literal(cur_.number(), opts_, cur_);
        if (!cur_.starts_ident()) cur_.fail("expected a real expression");
        std::string name = cur_.ident();
        if (name == "sqrt3") return sqrt3();
        if (name == "sqrt") {
            cur_.expect('(');
            CReal v = expr();
            cur_.expect(')');
            const Dyadic* e = v.exact();
            if (!e || e->sign() < 0) cur_.fail("sqrt needs a nonnegative dyadic argument");
            return sqrt_dyadic(*e);
        }
        if (name == "abs") {
            cur_.expect('(');
            CReal v = expr();
            cur_.expect(')');
            return abs(v);
        }
        if (name == "max" || name == "min") {
            cur_.expect('(');
            CReal a = expr();
            cur_.expect(',');
            CReal b = expr();
            cur_.expect(')');
            return name == "max" ? max(a, b) : min(a, b);
        }
        if (name == "limit") {
            std::string seq = cur_.ident();
            if (seq == "geom")
                return limit([](std::size_t n) { return CReal(Dyadic(1) - Dyadic::pow2(-static_cast<std::int64_t>(n))); });
            cur_.fail("unknown sequence \"" + seq + "\"");
        }
        cur_.fail("unknown name \"" + name + "\"");
    }

    Cursor& cur_;
    RealOptions opts_;
};

std::string strip_ws(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read \"" + path + "\"");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class SetParser {
public:
    explicit SetParser(Cursor& cur) : cur_(cur) {}

    ParsedSet set() {
        ParsedSet v = term();
        while (cur_.eat('|')) {
            ParsedSet w = term();
            v = {unite(v.set, w.set), "union(" + v.key + "," + w.key + ")"};
        }
        return v;
    }

private:
    struct Real {
        CReal value;
        std::string key;
    };

    Real real() {
        std::size_t start = cur_.pos();
        RealParser p(cur_, {});
        CReal v = p.expr();
        return {v, strip_ws(cur_.text().substr(start, cur_.pos() - start))};
    }

    TBSet unite(const TBSet& a, const TBSet& b) {
        if (a.dimension() != b.dimension())
            cur_.fail("union of dimensions " + std::to_string(a.dimension()) + " and " + std::to_string(b.dimension()));
        return tb_union(a, b);
    }

    TBSet translate(const std::vector<Real>& t, const TBSet& a) {
        if (t.size() != a.dimension())
            cur_.fail("translation by " + std::to_string(t.size()) + " coordinates of a set of dimension " +
                      std::to_string(a.dimension()));
        Point p;
        for (const auto& r : t) p.push_back(r.value);
        return tb_affine(1, p, a);
    }

    static std::string keys(const std::vector<Real>& rs) {
        std::string s;
        for (const auto& r : rs) s += r.key + ",";
        return s;
    }

    std::size_t small_count() {
        std::string n = cur_.number();
        if (n.find_first_not_of("0123456789") != std::string::npos || n.size() > 2 || std::stoul(n) == 0)
            cur_.fail("expected a dimension between 1 and 99");
        return std::stoul(n);
    }

    ParsedSet term() {
        ParsedSet v = primary();
        while (cur_.eat('+')) {
            cur_.expect('(');
            std::vector<Real> t{real()};
            while (cur_.eat(',')) t.push_back(real());
            cur_.expect(')');
            v = {translate(t, v.set), "translate(" + keys(t) + v.key + ")"};
        }
        return v;
    }

    ParsedSet primary() {
        if (cur_.eat('(')) {
            ParsedSet v = set();
            cur_.expect(')');
            return v;
        }
        if (!cur_.starts_ident()) cur_.fail("expected a set expression");
        std::string name = cur_.ident();
        if (name == "triangle") return {triangle_tb(), name};
        if (name == "sierpinski") return {sierpinski_tb(), name};
        if (name == "empty") {
            std::size_t m = 2;
            if (cur_.eat('(')) {
                m = small_count();
                cur_.expect(')');
            }
            return {empty_tb(m), "empty(" + std::to_string(m) + ")"};
        }
        if (name == "cube") {
            cur_.expect('(');
            std::size_t m = small_count();
            cur_.expect(')');
            return {cube_tb(m), "cube(" + std::to_string(m) + ")"};
        }
        if (name == "singleton") {
            cur_.expect('(');
            std::vector<Real> c{real()};
            while (cur_.eat(',')) c.push_back(real());
            cur_.expect(')');
            Point p;
            for (const auto& r : c) p.push_back(r.value);
            return {singleton_tb(p), "singleton(" + keys(c) + ")"};
        }
        if (name == "ifs") {
            cur_.expect('(');
            std::string path = cur_.until_close();
            cur_.expect(')');
            if (path.empty()) cur_.fail("ifs needs a file path");
            std::string body = read_file(path);
            IFS f;
            try {
                f = parse_ifs_json(body);
            } catch (const InputError& e) {
                throw InputError(path + ": " + e.what());
            }
            return {ifs_tb(f), "ifs#" + fingerprint(body)};
        }
        if (name == "union") {
            cur_.expect('(');
            ParsedSet a = set();
            cur_.expect(',');
            ParsedSet b = set();
            cur_.expect(')');
            return {unite(a.set, b.set), "union(" + a.key + "," + b.key + ")"};
        }
        if (name == "translate") {
            cur_.expect('(');
            // reals, then the set as last argument
            std::vector<Real> t;
            for (;;) {
                std::size_t save = cur_.pos();
                try {
                    Real r = real();
                    if (cur_.peek() == ',') {
                        t.push_back(std::move(r));
                        cur_.expect(',');
                        continue;
                    }
                } catch (const InputError&) {
                }
                cur_.reset(save);
                break;
            }
            ParsedSet a = set();
            cur_.expect(')');
            return {translate(t, a.set), "translate(" + keys(t) + a.key + ")"};
        }
        if (name == "scale") {
            cur_.expect('(');
            Real c = real();
            cur_.expect(',');
            ParsedSet a = set();
            cur_.expect(')');
            const Dyadic* e = c.value.exact();
            if (!e || e->sign() <= 0) cur_.fail("scale factor must be a positive dyadic");
            return {tb_affine(*e, Point(a.set.dimension(), CReal()), a.set), "scale(" + c.key + "," + a.key + ")"};
        }
        cur_.fail("unknown set \"" + name + "\"");
    }

    Cursor& cur_;
};

}  // namespace

CReal parse_real(std::string_view text, const RealOptions& opts) {
    Cursor cur(text);
    RealParser p(cur, opts);
    CReal v = p.expr();
    if (!cur.at_end()) cur.fail("unexpected input");
    return v;
}

ParsedSet parse_set(std::string_view text) {
    Cursor cur(text);
    SetParser p(cur);
    ParsedSet v = p.set();
    if (!cur.at_end()) cur.fail("unexpected input");
    return v;
}

IFS parse_ifs_json(std::string_view text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dimension") || !j.contains("anchors"))
        throw InputError("IFS config needs \"dimension\" and \"anchors\"");
    if (!j["dimension"].is_number_unsigned() || j["dimension"].get<std::size_t>() == 0)
        throw InputError("\"dimension\" must be a positive integer");
    RealOptions opts;
    if (j.contains("allow_rational")) {
        if (!j["allow_rational"].is_boolean()) throw InputError("\"allow_rational\" must be true or false");
        opts.allow_rational = j["allow_rational"].get<bool>();
    }
    auto m = j["dimension"].get<std::size_t>();
    if (!j["anchors"].is_array()) throw InputError("\"anchors\" must be an array");
    std::vector<Point> anchors;
    for (const auto& a : j["anchors"]) {
        if (!a.is_array()) throw InputError("each anchor must be an array of coordinates");
        Point p;
        for (const auto& c : a) {
            if (c.is_string())
                p.push_back(parse_real(c.get<std::string>(), opts));
            else if (c.is_number_integer())
                p.push_back(CReal(c.get<long>()));
            else
                throw InputError("anchor coordinates must be strings or integers, got " + c.dump());
        }
        anchors.push_back(std::move(p));
    }
    try {
        return make_ifs(m, std::move(anchors));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

std::string fingerprint(std::string_view s) {
    // FNV-1a
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream o;
    o << std::hex << h;
    return o.str();
}

}  // namespace certoset::cli
