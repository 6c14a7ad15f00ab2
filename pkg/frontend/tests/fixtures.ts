import { readFileSync } from 'node:fs';
import { join } from 'node:path';

import type { CompareReport, ParetoFile } from '../src/types';

const DIR = join(__dirname, 'fixtures');

function load<T>(name: string): T {
    return JSON.parse(readFileSync(join(DIR, name), 'utf8')) as T;
}

export const FIXTURE_NAMES: string[] = load('manifest.json');

export function loadSweep(name: string): ParetoFile {
    return load(`${name}.json`);
}

export interface CompareFixture {
    manual_grid: string[];
    report: CompareReport;
}

export function loadCompare(name: string): CompareFixture {
    return load(`${name}.compare.json`);
}
