#pragma once

#include <map>
#include <string>

namespace smm {

// Line numbers of every value in a JSON text, keyed by JSON pointer
// ("/kernel/h_plus/a", "/layout/theta_plus/2", "" for the root). Lenient: it
// only tracks structure and stops quietly on malformed input.
class JsonLocator {
public:
    explicit JsonLocator(const std::string& text);

    // Line of the pointer, or of its closest located ancestor; 1 if none.
    int line(const std::string& pointer) const;

private:
    std::map<std::string, int> lines_;
};

}  // namespace smm
