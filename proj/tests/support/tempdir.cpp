#include "support/tempdir.hpp"

#include <atomic>

#ifdef _WIN32
#include <process.h>
#else
#include <unistd.h>
#endif

namespace lesionfuse::testutil {

namespace {
std::atomic<int> counter{0};
}

TempDir::TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("lesionfuse_" + tag + "_" + std::to_string(getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

}  // namespace lesionfuse::testutil
