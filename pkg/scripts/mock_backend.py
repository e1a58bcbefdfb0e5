#!/usr/bin/env python3
"""Local mock backend for exercising the pipeline without a real LLM.

Serves a chat-completion endpoint at /v1/chat/completions and a
sentiment endpoint at /sentiment, both deterministic.

Usage: python scripts/mock_backend.py [--port 8808]
"""

import argparse
import json
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

COMPLETION_TEXT = (
    "A great gadget the whole family will love. Durable, easy to use, "
    "and perfect for everyday moments."
)


class Handler(BaseHTTPRequestHandler):
    def do_POST(self):
        length = int(self.headers.get("Content-Length", 0))
        body = json.loads(self.rfile.read(length) or b"{}")
        if self.path == "/v1/chat/completions":
            prompt = body.get("messages", [{}])[0].get("content", "")
            text = COMPLETION_TEXT
            if "Example1:" in prompt:
                text += " Shop now!"
            payload = {"choices": [{"message": {"content": text}}]}
            self._reply(200, payload)
        elif self.path == "/sentiment":
            self._reply(200, {"label": "positive", "score": 0.95})
        else:
            self._reply(404, {"error": "no such route"})

    def _reply(self, status, payload):
        data = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def log_message(self, fmt, *args):
        print(f"{self.address_string()} {fmt % args}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--port", type=int, default=8808)
    args = parser.parse_args()
    server = ThreadingHTTPServer(("127.0.0.1", args.port), Handler)
    print(f"mock backend listening on http://127.0.0.1:{args.port}")
    server.serve_forever()


if __name__ == "__main__":
    main()
