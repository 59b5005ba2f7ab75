#!/usr/bin/env python3
"""Validates data files against schemas/*.schema.json.

Usage: check_schemas.py SCHEMA_DIR DATA_DIR [DATA_DIR ...]
Each data directory may hold scene.manifest.json, events.records.jsonl, graph.egg.json,
dataset.qa.json and *.egg.json files. Exits non-zero on the first invalid document.
"""

import json
import pathlib
import sys

import jsonschema
from referencing import Registry, Resource


def load_registry(schema_dir):
    schemas = {}
    registry = Registry()
    for path in sorted(schema_dir.glob("*.schema.json")):
        doc = json.loads(path.read_text())
        jsonschema.Draft202012Validator.check_schema(doc)
        schemas[path.name] = doc
        registry = registry.with_resource(doc["$id"], Resource.from_contents(doc))
    return schemas, registry


def main():
    schema_dir = pathlib.Path(sys.argv[1])
    schemas, registry = load_registry(schema_dir)

    def validator(name):
        return jsonschema.Draft202012Validator(schemas[name], registry=registry)

    checked = 0
    for data_dir in map(pathlib.Path, sys.argv[2:]):
        jobs = []
        for path in sorted(data_dir.iterdir()):
            if path.name == "scene.manifest.json":
                jobs.append((path, "scene.manifest.schema.json", [json.loads(path.read_text())]))
            elif path.name == "events.records.jsonl":
                lines = [json.loads(l) for l in path.read_text().splitlines() if l.strip()]
                jobs.append((path, "event.record.schema.json", lines))
            elif path.name == "dataset.qa.json":
                jobs.append((path, "dataset.qa.schema.json", [json.loads(path.read_text())]))
            elif path.name.endswith(".egg.json"):
                jobs.append((path, "graph.egg.schema.json", [json.loads(path.read_text())]))
            elif path.name.endswith(".iq.json"):
                jobs.append((path, "relevant.info.schema.json", [json.loads(path.read_text())]))
        for path, schema, docs in jobs:
            v = validator(schema)
            for i, doc in enumerate(docs):
                errors = sorted(v.iter_errors(doc), key=lambda e: list(e.path))
                if errors:
                    e = errors[0]
                    where = "/".join(map(str, e.path))
                    print(f"{path}[{i}] {where}: {e.message}", file=sys.stderr)
                    return 1
                checked += 1
    print(f"{checked} document(s) valid")
    return 0 if checked else 1


if __name__ == "__main__":
    sys.exit(main())
