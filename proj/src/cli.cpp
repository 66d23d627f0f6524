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

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "certoset/cli.hpp"

namespace certoset::cli {

namespace {

namespace fs = std::filesystem;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// temp file + rename, so readers never see a partial file
void write_atomic(const fs::path& path, const std::string& data) {
    fs::path tmp = path;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
        o << data;
        o.close();
        if (!o) throw IoError("cannot write " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot create " + path.string());
    }
}

std::optional<Covering> cache_load(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream s;
    s << in.rdbuf();
    try {
        return covering_from_json(s.str());
    } catch (const InputError&) {
        return std::nullopt;
    }
}

Covering covering_for(const ParsedSet& set, std::int64_t level, std::int64_t precision, std::ostream& err) {
    const char* dir = std::getenv("CERTOSET_CACHE_DIR");
    if (!dir || !*dir) return export_covering(set.set, level, precision);
    fs::path file = fs::path(dir) / ("covering-" +
                                     fingerprint(set.key + "|" + std::to_string(level) + "|" + std::to_string(precision)) +
                                     ".json");
    if (auto hit = cache_load(file); hit && hit->level == level && hit->dimension == set.set.dimension()) return *hit;
    Covering c = export_covering(set.set, level, precision);
    try {
        fs::create_directories(dir);
        write_atomic(file, to_json(c));
    } catch (const std::exception& e) {
        err << "certoset: warning: covering cache not updated: " << e.what() << "\n";
    }
    return c;
}

void emit(const std::string& data, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-")
        out << data;
    else
        write_atomic(path, data);
}

// Answers at precision p read efforts up to p + 2.
void check_effort(std::int64_t precision, const char* what) {
    auto need = static_cast<Effort>(precision) + 2;
    if (need > effort_ceiling()) throw EffortCeilingExceeded(what, effort_ceiling());
}

ParsedSet nonempty_operand(const std::string& text, const char* name) {
    ParsedSet s = parse_set(text);
    if (tb_is_empty(s.set)) throw InputError(std::string("operand ") + name + " is empty");
    return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certified coverings, exact reals and Hausdorff distances.", "certoset"};
    app.require_subcommand(1);
    app.fallthrough();
    Effort ceiling = effort_ceiling();
    app.add_option("--effort-ceiling", ceiling, "Abort searches beyond this effort (exit code 3)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    struct {
        std::string set, format = "json", out, viewport;
        std::int64_t level = 0, cap = 10;
        std::optional<std::int64_t> precision;
    } draw;
    auto* dcmd = app.add_subcommand("draw", "Write the level-N covering of a set as JSON, CSV or SVG");
    dcmd->add_option("--set", draw.set, "Set expression")->required();
    dcmd->add_option("--level", draw.level, "Covering level N (radius 2^-N)")->required()->check(CLI::NonNegativeNumber);
    dcmd->add_option("--format", draw.format, "json, csv or svg")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "csv", "svg"}));
    dcmd->add_option("--out", draw.out, "Output file; standard output if omitted");
    dcmd->add_option("--viewport", draw.viewport, "SVG world rectangle x0,y0,x1,y1");
    dcmd->add_option("--precision", draw.precision, "Round centers to 2^-P (default level + 10)")
        ->check(CLI::NonNegativeNumber);
    dcmd->add_option("--level-cap", draw.cap, "Largest accepted level")->capture_default_str()->check(CLI::NonNegativeNumber);

    std::string expr;
    std::int64_t prec = 0;
    auto* rcmd = app.add_subcommand("real", "Print a 2^-P approximation of a real expression");
    rcmd->add_option("--expr", expr, "Real expression")->required();
    rcmd->add_option("--prec", prec, "Precision P")->required()->check(CLI::NonNegativeNumber);

    std::string set_a, set_b;
    auto* hcmd = app.add_subcommand("hausdorff", "Print a 2^-P approximation of the Hausdorff distance");
    hcmd->add_option("--a", set_a, "First set expression")->required();
    hcmd->add_option("--b", set_b, "Second set expression")->required();
    hcmd->add_option("--prec", prec, "Precision P")->required()->check(CLI::NonNegativeNumber);

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        ScopedEffortCeiling guard(ceiling);
        if (dcmd->parsed()) {
            if (draw.level > draw.cap)
                throw InputError("level " + std::to_string(draw.level) + " exceeds the level cap " +
                                 std::to_string(draw.cap));
            std::int64_t precision = draw.precision.value_or(draw.level + 10);
            if (precision < draw.level) throw InputError("precision must be at least the level");
            check_effort(precision, "draw");
            ParsedSet set = parse_set(draw.set);
            if (draw.format == "svg" && set.set.dimension() != 2) throw InputError("SVG output needs a set of dimension 2");
            std::optional<Viewport> view;
            if (!draw.viewport.empty()) view = parse_viewport(draw.viewport);
            Covering c = covering_for(set, draw.level, precision, err);
            std::string data;
            if (draw.format == "json")
                data = to_json(c);
            else if (draw.format == "csv")
                data = to_csv(c);
            else
                data = to_svg(c, view ? *view : default_viewport(c));
            emit(data, draw.out, out);
        } else if (rcmd->parsed()) {
            check_effort(prec, "real");
            out << approx_dyadic(parse_real(expr), prec).to_decimal() << "\n";
        } else {
            check_effort(prec, "hausdorff");
            ParsedSet a = nonempty_operand(set_a, "--a"), b = nonempty_operand(set_b, "--b");
            if (a.set.dimension() != b.set.dimension()) throw InputError("operands have different dimensions");
            out << approx_dyadic(hausdorff_tb(a.set, b.set), prec).to_decimal() << "\n";
        }
        return 0;
    } catch (const EffortCeilingExceeded& e) {
        err << "certoset: " << e.what() << "; raise --effort-ceiling to search further\n";
        return 3;
    } catch (const InputError& e) {
        err << "certoset: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "certoset: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "certoset: " << e.what() << "\n";
        return 2;
    } catch (const std::overflow_error& e) {
        err << "certoset: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "certoset: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace certoset::cli
