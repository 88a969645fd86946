#include "sdnapl/pmf_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sdnapl/errors.hpp"

namespace sdnapl {

namespace {

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

DiscretePmf parse_distribution(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::vector<std::pair<int, double>> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = strip(line);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError(origin + ":" + std::to_string(line_no) + ": expected value,probability");
        const std::string value_str = strip(line.substr(0, comma));
        const std::string prob_str = strip(line.substr(comma + 1));
        char* end = nullptr;
        const long value = std::strtol(value_str.c_str(), &end, 10);
        if (value_str.empty() || *end != '\0')
            throw ParseError(origin + ":" + std::to_string(line_no) + ": bad integer value '" + value_str + "'");
        const double prob = std::strtod(prob_str.c_str(), &end);
        if (prob_str.empty() || *end != '\0')
            throw ParseError(origin + ":" + std::to_string(line_no) + ": bad probability '" + prob_str + "'");
        entries.emplace_back(static_cast<int>(value), prob);
    }
    if (entries.empty()) throw EmptyTableError(origin + ": no distribution entries");
    return DiscretePmf::from_table(entries);
}

DiscretePmf load_distribution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open distribution file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_distribution(buf.str(), path);
}

}  // namespace sdnapl
