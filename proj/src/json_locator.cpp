#include "smm/json_locator.hpp"

#include <cctype>

namespace smm {

namespace {

class Scanner {
public:
    Scanner(const std::string& text, std::map<std::string, int>& out) : s_(text), out_(out) {}

    void run() {
        skip();
        value("");
    }

private:
    const std::string& s_;
    std::map<std::string, int>& out_;
    std::size_t pos_ = 0;
    int line_ = 1;
    bool ok_ = true;

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            if (s_[pos_] == '\n') ++line_;
            ++pos_;
        }
    }

    static std::string escape(const std::string& key) {
        std::string r;
        for (char c : key) {
            if (c == '~')
                r += "~0";
            else if (c == '/')
                r += "~1";
            else
                r += c;
        }
        return r;
    }

    std::string string() {
        std::string r;
        ++pos_;  // opening quote
        while (pos_ < s_.size() && s_[pos_] != '"') {
            if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
            if (s_[pos_] == '\n') ++line_;
            r += s_[pos_++];
        }
        ++pos_;
        return r;
    }

    void value(const std::string& ptr) {
        if (!ok_ || pos_ >= s_.size()) {
            ok_ = false;
            return;
        }
        out_.emplace(ptr, line_);
        const char c = s_[pos_];
        if (c == '{') {
            ++pos_;
            skip();
            if (pos_ < s_.size() && s_[pos_] == '}') {
                ++pos_;
                return;
            }
            while (ok_ && pos_ < s_.size()) {
                skip();
                if (pos_ >= s_.size() || s_[pos_] != '"') {
                    ok_ = false;
                    return;
                }
                const int key_line = line_;
                const std::string key = string();
                skip();
                if (pos_ >= s_.size() || s_[pos_] != ':') {
                    ok_ = false;
                    return;
                }
                ++pos_;
                skip();
                const std::string child = ptr + "/" + escape(key);
                out_.emplace(child, key_line);
                value(child);
                skip();
                if (pos_ < s_.size() && s_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                if (pos_ < s_.size() && s_[pos_] == '}') ++pos_;
                else ok_ = false;
                return;
            }
        } else if (c == '[') {
            ++pos_;
            skip();
            if (pos_ < s_.size() && s_[pos_] == ']') {
                ++pos_;
                return;
            }
            for (int k = 0; ok_ && pos_ < s_.size(); ++k) {
                skip();
                value(ptr + "/" + std::to_string(k));
                skip();
                if (pos_ < s_.size() && s_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                if (pos_ < s_.size() && s_[pos_] == ']') ++pos_;
                else ok_ = false;
                return;
            }
        } else if (c == '"') {
            string();
        } else {
            while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != '}' && s_[pos_] != ']' &&
                   !std::isspace(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
        }
    }
};

}  // namespace

JsonLocator::JsonLocator(const std::string& text) { Scanner(text, lines_).run(); }

int JsonLocator::line(const std::string& pointer) const {
    std::string p = pointer;
    while (true) {
        auto it = lines_.find(p);
        if (it != lines_.end()) return it->second;
        if (p.empty()) return 1;
        p.erase(p.rfind('/'));
    }
}

}  // namespace smm
