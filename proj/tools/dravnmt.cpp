// Command-line front end for the translation toolkit. One subcommand per
// pipeline stage; see README.md for a walkthrough.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dravnmt/bpe.hpp"
#include "dravnmt/corpus.hpp"
#include "dravnmt/errors.hpp"
#include "dravnmt/script.hpp"

namespace {

using namespace dravnmt;

std::vector<std::string> read_all_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
    }
    return lines;
}

std::vector<std::string> read_input(const std::string& path) {
    if (path.empty()) return read_all_lines(std::cin);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return read_all_lines(in);
}

void write_output(const std::string& path,
                  const std::vector<std::string>& lines) {
    if (path.empty()) {
        for (const auto& l : lines) std::cout << l << "\n";
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    for (const auto& l : lines) out << l << "\n";
}

Script parse_script_arg(const std::string& name) {
    const auto s = script_from_name(name);
    if (!s) throw UnknownLanguage("unknown script: " + name);
    return *s;
}

int run_translit(const std::string& src, const std::string& tgt,
                 const std::string& in_path, const std::string& out_path) {
    const Script s = parse_script_arg(src);
    const Script t = parse_script_arg(tgt);
    auto lines = read_input(in_path);
    for (auto& line : lines) line = transliterate(line, s, t);
    write_output(out_path, lines);
    return 0;
}

}  // namespace


int main(int argc, char** argv) {
    CLI::App app{"dravnmt: transliteration-based zero-shot translation "
                 "toolkit for Dravidian languages"};
    app.require_subcommand(1);

    std::string translit_src, translit_tgt, in_path, out_path;
    auto* translit = app.add_subcommand(
        "translit", "Offset-map text between Indic scripts");
    translit->add_option("--src", translit_src, "source script")->required();
    translit->add_option("--tgt", translit_tgt, "target script")->required();
    translit->add_option("--in", in_path, "input file (default stdin)");
    translit->add_option("--out", out_path, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (translit->parsed()) {
            return run_translit(translit_src, translit_tgt, in_path,
                                out_path);
        }
    } catch (const dravnmt::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
