#!/usr/bin/env python3
"""Start the REST server.

    python scripts/run_server.py [--host 127.0.0.1] [--port 8000] [--db evoshape.db]

The API lives under /api; pair it with the frontend/ app for the browser UI.
"""

import argparse

import uvicorn

from evoshape.service import create_app


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument("--db", default="evoshape.db",
                        help="path of the sqlite store")
    args = parser.parse_args()
    uvicorn.run(create_app(args.db), host=args.host, port=args.port)


if __name__ == "__main__":
    main()
