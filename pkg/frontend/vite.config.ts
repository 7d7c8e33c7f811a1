/// <reference types="vitest/config" />
import { defineConfig } from 'vite';

// base './' keeps asset paths relative: the bundle is mounted under /ui
// by the planning service, not at the site root.
export default defineConfig({
  base: './',
  build: {
    outDir: 'dist',
    target: 'es2020',
  },
  server: {
    proxy: {
      '/plan': 'http://127.0.0.1:8000',
      '/network': 'http://127.0.0.1:8000',
      '/healthz': 'http://127.0.0.1:8000',
    },
  },
  test: {
    environment: 'jsdom',
  },
});
