import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    // DOM-dependent files opt in with a @vitest-environment happy-dom docblock
    environment: "node",
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
