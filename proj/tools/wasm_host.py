#!/usr/bin/env python3
"""Headless host for the WebAssembly cube module.

Loads olapcube.wasm with wasmtime and evaluates one query document through
the exported boundary (alloc, session_create, session_query, session_free,
dealloc). Arguments and output match `cube query`.
"""

import argparse
import json
import struct
import sys

import wasmtime


class Module:
    def __init__(self, path):
        engine = wasmtime.Engine()
        self.store = wasmtime.Store(engine)
        wasi = wasmtime.WasiConfig()
        wasi.inherit_stderr()
        self.store.set_wasi(wasi)
        linker = wasmtime.Linker(engine)
        linker.define_wasi()
        instance = linker.instantiate(self.store, wasmtime.Module.from_file(engine, path))
        self.exports = instance.exports(self.store)
        self.memory = self.exports["memory"]
        self.exports["_initialize"](self.store)

    def call(self, name, *args):
        return self.exports[name](self.store, *args)

    def put(self, data):
        ptr = self.call("alloc", len(data))
        if data:
            self.memory.write(self.store, data, ptr)
        return ptr, len(data)

    def take(self, reply):
        status, length = struct.unpack("<II", self.memory.read(self.store, reply, reply + 8))
        payload = self.memory.read(self.store, reply + 8, reply + 8 + length)
        self.call("dealloc", reply, 8 + length)
        return status == 0, bytes(payload)


def run(module_path, schema, facts, query):
    m = Module(module_path)
    s = m.put(schema)
    f = m.put(facts)
    ok, payload = m.take(m.call("session_create", s[0], s[1], f[0], f[1]))
    m.call("dealloc", *s)
    m.call("dealloc", *f)
    if not ok:
        return ok, payload
    handle = json.loads(payload)["session"]
    q = m.put(query)
    ok, payload = m.take(m.call("session_query", handle, q[0], q[1]))
    m.call("dealloc", *q)
    m.take(m.call("session_free", handle))
    return ok, payload


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--module", required=True, help="path to olapcube.wasm")
    parser.add_argument("--schema", required=True)
    parser.add_argument("--facts", required=True)
    parser.add_argument("--query", required=True)
    parser.add_argument("--out", default="-")
    args = parser.parse_args()

    def read(path):
        with open(path, "rb") as fh:
            return fh.read()

    ok, payload = run(args.module, read(args.schema), read(args.facts), read(args.query))
    if args.out == "-":
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    else:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
