#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace satd {

enum class CommentKind { Line, Block };

inline const char* to_string(CommentKind k) {
    return k == CommentKind::Line ? "line" : "block";
}

struct SourceFile {
    std::string repo_id;
    std::string path;     // relative to the repo root, '/'-separated
    std::string content;  // UTF-8; invalid bytes replaced at load time
};

struct RawComment {
    std::string repo_id;
    std::string path;
    int line_start = 0;  // 1-based
    int line_end = 0;
    CommentKind kind = CommentKind::Line;
    bool javadoc = false;        // block comment opened with "/**"
    std::size_t char_start = 0;  // byte span of the comment including delimiters
    std::size_t char_end = 0;    // half-open
    std::string text;            // delimiters removed, block gutter stripped
};

namespace detail {

inline std::string_view trim_view(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

/// Per-line cleanup of a block comment body: drop the leading whitespace and
/// '*' gutter (plus at most one space after it), drop trailing whitespace,
/// then drop empty lines at both ends of the comment.
inline std::string normalize_block_body(std::string_view body) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (true) {
        std::size_t nl = body.find('\n', pos);
        std::string_view ln = body.substr(pos, (nl == std::string_view::npos ? body.size() : nl) - pos);
        if (!ln.empty() && ln.back() == '\r') ln.remove_suffix(1);
        std::size_t b = ln.find_first_not_of(" \t");
        ln = (b == std::string_view::npos) ? std::string_view{} : ln.substr(b);
        if (!ln.empty() && ln.front() == '*') {
            std::size_t s = ln.find_first_not_of('*');
            ln = (s == std::string_view::npos) ? std::string_view{} : ln.substr(s);
            if (!ln.empty() && ln.front() == ' ') ln.remove_prefix(1);
        }
        std::size_t e = ln.find_last_not_of(" \t");
        ln = (e == std::string_view::npos) ? std::string_view{} : ln.substr(0, e + 1);
        lines.push_back(ln);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    std::size_t first = 0, last = lines.size();
    while (first < last && lines[first].empty()) ++first;
    while (last > first && lines[last - 1].empty()) --last;
    std::string out;
    for (std::size_t k = first; k < last; ++k) {
        if (k > first) out.push_back('\n');
        out.append(lines[k]);
    }
    return out;
}

inline std::string normalize_line_body(std::string_view body) {
    return std::string(trim_view(body));
}

} // namespace detail

/// Lexes all // and /* */ comments out of Java source. Comment markers inside
/// string literals, char literals and """ text blocks are masked; markers
/// inside an open comment are inert; block comments do not nest. String and
/// char literals never span lines (an unterminated literal closes at EOL);
/// text blocks may span lines. An unterminated block comment runs to EOF.
inline std::vector<RawComment> extract_comments(const SourceFile& file) {
    const std::string& src = file.content;
    const std::size_t n = src.size();
    std::vector<RawComment> out;
    std::size_t i = 0;
    int line = 1;

    auto make_comment = [&](CommentKind kind) {
        RawComment rc;
        rc.repo_id = file.repo_id;
        rc.path = file.path;
        rc.kind = kind;
        return rc;
    };

    while (i < n) {
        char c = src[i];
        if (c == '/' && i + 1 < n && src[i + 1] == '/') {
            RawComment rc = make_comment(CommentKind::Line);
            rc.char_start = i;
            rc.line_start = rc.line_end = line;
            std::size_t j = i + 2;
            while (j < n && src[j] != '\n') ++j;
            rc.char_end = j;
            rc.text = detail::normalize_line_body(std::string_view(src).substr(i + 2, j - (i + 2)));
            out.push_back(std::move(rc));
            i = j;  // the terminating '\n', if any, is handled below
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '*') {
            RawComment rc = make_comment(CommentKind::Block);
            rc.char_start = i;
            rc.line_start = line;
            std::size_t body_start = i + 2;
            std::size_t j = body_start;
            int cur = line;       // line of the character about to be read
            int end_line = line;  // line of the last character consumed
            std::size_t body_end = n;
            bool terminated = false;
            while (j < n) {
                if (src[j] == '*' && j + 1 < n && src[j + 1] == '/') {
                    body_end = j;
                    j += 2;
                    end_line = cur;
                    terminated = true;
                    break;
                }
                end_line = cur;
                if (src[j] == '\n') ++cur;
                ++j;
            }
            rc.char_end = terminated ? j : n;
            rc.line_end = end_line;
            std::string_view body = std::string_view(src).substr(body_start, body_end - body_start);
            rc.javadoc = !body.empty() && body.front() == '*';
            rc.text = detail::normalize_block_body(body);
            out.push_back(std::move(rc));
            line = cur;
            i = j;
            continue;
        }
        if (c == '"' && i + 2 < n && src[i + 1] == '"' && src[i + 2] == '"') {
            // text block: spans lines, closed by the next """
            std::size_t j = i + 3;
            while (j < n) {
                if (src[j] == '\\') {
                    if (j + 1 < n && src[j + 1] == '\n') ++line;
                    j = std::min(j + 2, n);
                    continue;
                }
                if (src[j] == '"' && j + 1 < n && src[j + 1] == '"' && j + 2 < n && src[j + 2] == '"') {
                    j += 3;
                    break;
                }
                if (src[j] == '\n') ++line;
                ++j;
            }
            i = j;
            continue;
        }
        if (c == '"' || c == '\'') {
            // ordinary string/char literal; \" \' do not close, \\ is one unit;
            // an unterminated literal closes at end of line
            char quote = c;
            std::size_t j = i + 1;
            while (j < n && src[j] != quote && src[j] != '\n') {
                if (src[j] == '\\' && j + 1 < n && src[j + 1] != '\n')
                    j += 2;
                else
                    ++j;
            }
            i = (j < n && src[j] == quote) ? j + 1 : j;
            continue;
        }
        if (c == '\n') ++line;
        ++i;
    }
    return out;
}

struct SkippedFile {
    std::string path;
    std::string reason;
};

struct ScanResult {
    std::vector<SourceFile> files;
    std::vector<SkippedFile> skipped;
};

namespace detail {

inline bool has_java_extension(const std::string& path) {
    static constexpr std::string_view ext = ".java";
    if (path.size() < ext.size()) return false;
    std::size_t off = path.size() - ext.size();
    for (std::size_t k = 0; k < ext.size(); ++k) {
        char a = path[off + k];
        if (a >= 'A' && a <= 'Z') a = static_cast<char>(a - 'A' + 'a');
        if (a != ext[k]) return false;
    }
    return true;
}

/// Replaces ill-formed UTF-8 bytes with U+FFFD so extraction is total.
inline std::string lossy_utf8(std::string_view bytes) {
    static constexpr std::string_view replacement = "\xEF\xBF\xBD";
    std::string out;
    out.reserve(bytes.size());
    std::size_t i = 0, n = bytes.size();
    while (i < n) {
        unsigned char c = static_cast<unsigned char>(bytes[i]);
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
            ++i;
            continue;
        }
        std::size_t len = c >= 0xF0 ? 4 : c >= 0xE0 ? 3 : c >= 0xC0 ? 2 : 0;
        bool ok = len > 0 && i + len <= n && c <= 0xF4;
        if (ok) {
            for (std::size_t k = 1; k < len; ++k)
                if ((static_cast<unsigned char>(bytes[i + k]) & 0xC0) != 0x80) ok = false;
        }
        if (ok) {
            unsigned char c1 = static_cast<unsigned char>(bytes[i + 1]);
            if (len == 2 && c < 0xC2) ok = false;                      // overlong
            if (len == 3 && c == 0xE0 && c1 < 0xA0) ok = false;        // overlong
            if (len == 3 && c == 0xED && c1 >= 0xA0) ok = false;       // surrogate
            if (len == 4 && c == 0xF0 && c1 < 0x90) ok = false;        // overlong
            if (len == 4 && c == 0xF4 && c1 >= 0x90) ok = false;       // > U+10FFFF
        }
        if (ok) {
            out.append(bytes.substr(i, len));
            i += len;
        } else {
            out.append(replacement);
            ++i;
        }
    }
    return out;
}

} // namespace detail

/// Walks a source tree and loads every *.java file (case-insensitive),
/// in lexicographic order of the '/'-separated relative path. Files that
/// cannot be read are skipped and reported; an unusable root is fatal.
inline ScanResult scan_tree(const std::filesystem::path& root, const std::string& repo_id) {
    namespace fs = std::filesystem;
    if (!fs::exists(root) || !fs::is_directory(root))
        throw std::runtime_error("repository root is not a readable directory: " + root.string());

    ScanResult result;
    std::vector<std::pair<std::string, fs::path>> candidates;
    std::error_code ec;
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    if (ec) throw std::runtime_error("cannot scan " + root.string() + ": " + ec.message());
    for (fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
        if (ec) throw std::runtime_error("cannot scan " + root.string() + ": " + ec.message());
        std::error_code fec;
        if (it->is_directory(fec)) continue;
        std::string rel = it->path().lexically_relative(root).generic_string();
        if (!detail::has_java_extension(rel)) continue;
        if (!fs::is_regular_file(it->path(), fec) || fec) {
            result.skipped.push_back({rel, fec ? fec.message() : "not a regular file"});
            continue;
        }
        candidates.emplace_back(std::move(rel), it->path());
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    for (auto& [rel, abs] : candidates) {
        std::ifstream in(abs, std::ios::binary);
        if (!in) {
            result.skipped.push_back({rel, "cannot open for reading"});
            continue;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        if (in.bad()) {
            result.skipped.push_back({rel, "read error"});
            continue;
        }
        result.files.push_back({repo_id, rel, detail::lossy_utf8(ss.str())});
    }
    return result;
}

} // namespace satd
