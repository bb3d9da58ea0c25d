#include "idq/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>

namespace idq {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> words;
    std::size_t p = 0;
    while (p < line.size()) {
        while (p < line.size() && (line[p] == ' ' || line[p] == '\t' || line[p] == '\r')) ++p;
        std::size_t q = p;
        while (q < line.size() && line[q] != ' ' && line[q] != '\t' && line[q] != '\r') ++q;
        if (q > p) words.push_back(line.substr(p, q - p));
        p = q;
    }
    return words;
}

template <typename Int>
Int parse_int(std::string_view word, std::size_t line, const char* what) {
    Int value{};
    auto [end, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
    if (ec != std::errc() || end != word.data() + word.size()) {
        throw ParseError(line, std::string("bad ") + what + " '" + std::string(word) + "'");
    }
    return value;
}

bool next_line(std::istream& in, std::string& line, std::size_t& number) {
    if (!std::getline(in, line)) return false;
    ++number;
    return true;
}

class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}

    void bytes(const void* data, std::size_t size) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t k = 0; k < size; ++k) {
            hash_ = (hash_ ^ p[k]) * 0x100000001b3ULL;
        }
        out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    }
    void u32(std::uint32_t v) {
        std::array<unsigned char, 4> b{};
        for (int k = 0; k < 4; ++k) b[k] = static_cast<unsigned char>(v >> (8 * k));
        bytes(b.data(), b.size());
    }
    void u64_raw(std::uint64_t v) {
        std::array<char, 8> b{};
        for (int k = 0; k < 8; ++k) b[k] = static_cast<char>(v >> (8 * k));
        out_.write(b.data(), b.size());
    }
    std::uint64_t hash() const { return hash_; }

private:
    std::ostream& out_;
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    void bytes(void* data, std::size_t size) {
        if (!in_.read(static_cast<char*>(data), static_cast<std::streamsize>(size))) {
            throw std::runtime_error("index file truncated");
        }
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t k = 0; k < size; ++k) hash_ = (hash_ ^ p[k]) * 0x100000001b3ULL;
    }
    std::uint32_t u32() {
        std::array<unsigned char, 4> b{};
        bytes(b.data(), b.size());
        std::uint32_t v = 0;
        for (int k = 0; k < 4; ++k) v |= std::uint32_t{b[k]} << (8 * k);
        return v;
    }
    std::uint64_t u64_raw() {
        std::array<unsigned char, 8> b{};
        if (!in_.read(reinterpret_cast<char*>(b.data()), b.size())) throw std::runtime_error("index file truncated");
        std::uint64_t v = 0;
        for (int k = 0; k < 8; ++k) v |= std::uint64_t{b[k]} << (8 * k);
        return v;
    }
    std::uint64_t hash() const { return hash_; }

private:
    std::istream& in_;
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

constexpr char kMagic[4] = {'I', 'D', 'Q', '1'};

}  // namespace

DictionaryInput read_dictionary(std::istream& in) {
    DictionaryInput input;
    std::string line;
    std::size_t number = 0;
    if (!next_line(in, line, number)) throw ParseError(1, "missing header '<n> <d>'");
    auto header = split_words(line);
    if (header.size() != 2) throw ParseError(number, "expected '<n> <d>'");
    auto n = parse_int<std::int64_t>(header[0], number, "text length");
    auto d = parse_int<std::int64_t>(header[1], number, "fragment count");
    if (n < 1 || n > std::numeric_limits<Pos>::max() / 8) throw ParseError(number, "text length out of range");
    if (d < 0) throw ParseError(number, "negative fragment count");

    if (!next_line(in, input.text, number)) throw ParseError(number + 1, "missing text line");
    if (static_cast<std::int64_t>(input.text.size()) != n) {
        throw ParseError(number, "text has " + std::to_string(input.text.size()) + " bytes, header says " +
                                     std::to_string(n));
    }
    input.fragments.reserve(static_cast<std::size_t>(std::min<std::int64_t>(d, 1 << 24)));
    for (std::int64_t k = 0; k < d; ++k) {
        if (!next_line(in, line, number)) throw ParseError(number + 1, "missing fragment line");
        auto words = split_words(line);
        if (words.size() != 2) throw ParseError(number, "expected '<l> <r>'");
        auto l = parse_int<std::int64_t>(words[0], number, "fragment start");
        auto r = parse_int<std::int64_t>(words[1], number, "fragment end");
        if (l < 1 || l > r || r > n) {
            throw RangeError("line " + std::to_string(number) + ": fragment (" + std::to_string(l) + "," +
                             std::to_string(r) + ") outside [1, " + std::to_string(n) + "]");
        }
        input.fragments.push_back(Span{static_cast<Pos>(l), static_cast<Pos>(r)});
    }
    while (next_line(in, line, number)) {
        if (!split_words(line).empty()) throw ParseError(number, "unexpected content after the fragments");
    }
    return input;
}

void write_dictionary(std::ostream& out, const DictionaryInput& input) {
    out << input.text.size() << ' ' << input.fragments.size() << '\n' << input.text << '\n';
    for (const Span& f : input.fragments) out << f.l << ' ' << f.r << '\n';
}

std::string_view kind_name(QueryKind kind) {
    switch (kind) {
        case QueryKind::kExists: return "EXISTS";
        case QueryKind::kReport: return "REPORT";
        case QueryKind::kCount: return "COUNT";
        case QueryKind::kCountDistinct: return "CDIST";
        case QueryKind::kReportDistinct: return "RDIST";
    }
    return "?";
}

std::optional<QueryKind> parse_kind(std::string_view name) {
    for (QueryKind k : kAllQueryKinds) {
        if (kind_name(k) == name) return k;
    }
    return std::nullopt;
}

std::vector<Query> read_queries(std::istream& in) {
    std::vector<Query> queries;
    std::string line;
    std::size_t number = 0;
    while (next_line(in, line, number)) {
        auto words = split_words(line);
        if (words.empty()) continue;
        if (words.size() != 3) throw ParseError(number, "expected '<KIND> <i> <j>'");
        auto kind = parse_kind(words[0]);
        if (!kind) throw ParseError(number, "unknown query kind '" + std::string(words[0]) + "'");
        auto i = parse_int<Pos>(words[1], number, "position");
        auto j = parse_int<Pos>(words[2], number, "position");
        if (i < 1 || i > j) throw ParseError(number, "need 1 <= i <= j");
        queries.push_back(Query{*kind, i, j, number});
    }
    return queries;
}

std::string answer_line(const DictionaryIndex& index, QueryKind kind, Pos i, Pos j) {
    std::ostringstream out;
    switch (kind) {
        case QueryKind::kExists:
            out << (index.exists(i, j) ? 1 : 0);
            break;
        case QueryKind::kCount:
            out << index.count(i, j);
            break;
        case QueryKind::kCountDistinct:
            out << index.count_distinct(i, j);
            break;
        case QueryKind::kReport: {
            auto occurrences = index.report(i, j);
            out << occurrences.size();
            for (const Occurrence& o : occurrences) out << ' ' << o.pattern << ' ' << o.l << ' ' << o.r;
            break;
        }
        case QueryKind::kReportDistinct: {
            auto ids = index.report_distinct(i, j);
            out << ids.size();
            for (PatternId p : ids) out << ' ' << p;
            break;
        }
    }
    return out.str();
}

void save_index(std::ostream& out, const DictionaryIndex& index) {
    Writer w(out);
    w.bytes(kMagic, sizeof kMagic);
    w.u32(kIndexFormatVersion);
    w.u32(static_cast<std::uint32_t>(index.n()));
    w.bytes(index.text().data(), index.text().size());
    auto fragments = index.fragments();
    w.u32(static_cast<std::uint32_t>(fragments.size()));
    for (const Span& f : fragments) {
        w.u32(static_cast<std::uint32_t>(f.l));
        w.u32(static_cast<std::uint32_t>(f.r));
    }
    BuildStats s = index.stats();
    w.u32(static_cast<std::uint32_t>(s.classes));
    w.u32(static_cast<std::uint32_t>(s.patterns_distinct));
    w.u64_raw(w.hash());
    if (!out) throw std::runtime_error("failed writing index");
}

DictionaryInput load_index(std::istream& in, BuildStats* recorded) {
    Reader r(in);
    char magic[4];
    r.bytes(magic, sizeof magic);
    if (!std::equal(std::begin(magic), std::end(magic), std::begin(kMagic))) {
        throw std::runtime_error("not an index file (bad magic)");
    }
    std::uint32_t version = r.u32();
    if (version != kIndexFormatVersion) {
        throw std::runtime_error("unsupported index format version " + std::to_string(version));
    }
    DictionaryInput input;
    std::uint32_t n = r.u32();
    if (n == 0 || n > static_cast<std::uint32_t>(std::numeric_limits<Pos>::max() / 8)) {
        throw std::runtime_error("index file has a bad text length");
    }
    input.text.resize(n);
    r.bytes(input.text.data(), n);
    std::uint32_t d = r.u32();
    for (std::uint32_t k = 0; k < d; ++k) {
        auto l = static_cast<Pos>(r.u32());
        auto e = static_cast<Pos>(r.u32());
        if (l < 1 || l > e || e > static_cast<Pos>(n)) throw std::runtime_error("index file has a bad fragment");
        input.fragments.push_back(Span{l, e});
    }
    BuildStats stats;
    stats.n = static_cast<Pos>(n);
    stats.fragments = d;
    stats.classes = r.u32();
    stats.patterns_distinct = r.u32();
    std::uint64_t expected = r.hash();
    if (r.u64_raw() != expected) throw std::runtime_error("index file checksum mismatch");
    if (recorded) *recorded = stats;
    return input;
}

}  // namespace idq
