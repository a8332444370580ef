#include "hybridcp/c_api.h"

#include "hybridcp/contractor.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace {

struct Bridge {
    hybridcp::ContractorRegistry registry;
    std::string last_error;
};

std::mutex g_mutex;
std::map<int, std::unique_ptr<Bridge>> g_bridges;
int g_next_handle = 1;

Bridge* lookup(int handle)
{
    std::lock_guard lock(g_mutex);
    auto it = g_bridges.find(handle);
    return it == g_bridges.end() ? nullptr : it->second.get();
}

void copy_message(const std::string& msg, char* out, std::size_t size)
{
    if (out == nullptr || size == 0) {
        return;
    }
    const std::size_t n = std::min(msg.size(), size - 1);
    std::memcpy(out, msg.data(), n);
    out[n] = '\0';
}

} // namespace

extern "C" {

int hybridcp_open(void)
{
    try {
        std::lock_guard lock(g_mutex);
        const int handle = g_next_handle++;
        g_bridges.emplace(handle, std::make_unique<Bridge>());
        return handle;
    } catch (...) {
        return HYBRIDCP_ERR_INTERNAL;
    }
}

int hybridcp_close(int handle)
{
    std::lock_guard lock(g_mutex);
    return g_bridges.erase(handle) == 1 ? 0 : HYBRIDCP_ERR_HANDLE;
}

int hybridcp_create_contractor(int handle, const char* const* functions, std::size_t count,
                               std::size_t arity, char* error, std::size_t error_size)
{
    Bridge* bridge = lookup(handle);
    if (bridge == nullptr) {
        copy_message("invalid or closed handle", error, error_size);
        return HYBRIDCP_ERR_HANDLE;
    }
    try {
        std::vector<std::string> texts(functions, functions + count);
        bridge->last_error.clear();
        return static_cast<int>(bridge->registry.create_contractor(texts, arity));
    } catch (const hybridcp::ParseError& e) {
        bridge->last_error = e.what();
        copy_message(bridge->last_error, error, error_size);
        return HYBRIDCP_ERR_PARSE;
    } catch (const std::exception& e) {
        bridge->last_error = e.what();
        copy_message(bridge->last_error, error, error_size);
        return HYBRIDCP_ERR_INTERNAL;
    }
}

int hybridcp_contract(int handle, int cont_index, double* bounds, std::size_t length)
{
    Bridge* bridge = lookup(handle);
    if (bridge == nullptr) {
        return HYBRIDCP_ERR_HANDLE;
    }
    try {
        if (cont_index < 0) {
            throw hybridcp::UnknownContractor("negative contractor index");
        }
        if (bounds == nullptr && length != 0) {
            throw hybridcp::MalformedBounds("null bounds buffer");
        }
        const auto status = bridge->registry.contract(static_cast<std::size_t>(cont_index),
                                                      std::span<double>(bounds, length));
        return static_cast<int>(status);
    } catch (const hybridcp::UnknownContractor& e) {
        bridge->last_error = e.what();
        return HYBRIDCP_ERR_UNKNOWN_CONTRACTOR;
    } catch (const hybridcp::MalformedBounds& e) {
        bridge->last_error = e.what();
        return HYBRIDCP_ERR_MALFORMED_BOUNDS;
    } catch (const std::exception& e) {
        bridge->last_error = e.what();
        return HYBRIDCP_ERR_INTERNAL;
    }
}

const char* hybridcp_last_error(int handle)
{
    Bridge* bridge = lookup(handle);
    return bridge == nullptr ? "invalid or closed handle" : bridge->last_error.c_str();
}

} // extern "C"
