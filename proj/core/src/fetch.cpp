#include <cstdio>
#include <memory>
#include <stdexcept>

#include <curl/curl.h>

#include "stoffar/registry.hpp"

namespace stoffar {
namespace {

std::size_t write_file(char* data, std::size_t size, std::size_t count, void* user) {
  return std::fwrite(data, size, count, static_cast<std::FILE*>(user)) * size;
}

}  // namespace

std::filesystem::path fetch_dataset(const DatasetEntry& entry, const std::filesystem::path& dir,
                                    bool force) {
  if (entry.synthetic) throw std::invalid_argument("'" + entry.name + "' is generated locally, nothing to fetch");
  if (entry.url.empty()) throw std::invalid_argument("'" + entry.name + "' has no download URL");
  std::filesystem::create_directories(dir);
  const auto target = dir / entry.file;
  if (!force && std::filesystem::exists(target)) return target;

  const auto partial = std::filesystem::path(target.string() + ".part");
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> out(std::fopen(partial.c_str(), "wb"), &std::fclose);
  if (!out) throw std::runtime_error("cannot write " + partial.string());

  std::unique_ptr<CURL, void (*)(CURL*)> curl(curl_easy_init(), &curl_easy_cleanup);
  if (!curl) throw std::runtime_error("curl initialization failed");
  char err[CURL_ERROR_SIZE] = {};
  curl_easy_setopt(curl.get(), CURLOPT_URL, entry.url.c_str());
  curl_easy_setopt(curl.get(), CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEFUNCTION, &write_file);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, out.get());
  curl_easy_setopt(curl.get(), CURLOPT_ERRORBUFFER, err);
  const CURLcode rc = curl_easy_perform(curl.get());
  out.reset();
  if (rc != CURLE_OK) {
    std::filesystem::remove(partial);
    throw std::runtime_error("download of " + entry.url + " failed: " +
                             (err[0] != '\0' ? std::string(err) : curl_easy_strerror(rc)));
  }
  std::filesystem::rename(partial, target);
  return target;
}

}  // namespace stoffar
