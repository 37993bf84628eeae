// Every anchor a verification case can carry must appear in the README anchor table.

#include <cstdio>
#include <fstream>
#include <sstream>

#include "suites.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: doc_coverage README.md\n");
        return 2;
    }
    std::ifstream in(argv[1]);
    if (!in) {
        std::fprintf(stderr, "cannot read %s\n", argv[1]);
        return 2;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string readme = ss.str();
    int missing = 0;
    for (const auto& [anchor, text] : ekgw::verify::anchor_table()) {
        if (readme.find("`" + anchor + "`") == std::string::npos) {
            std::printf("missing anchor: %s\n", anchor.c_str());
            ++missing;
        }
    }
    std::printf("%zu anchors, %d missing\n", ekgw::verify::anchor_table().size(), missing);
    return missing == 0 ? 0 : 1;
}
